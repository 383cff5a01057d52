"""
Goal-directed connection search over the non-clausal matrix.

The search proves obligations, i.e. subtrees whose paths must all be closed
given the atoms on the active path. A β-position obliges every child, an
α-position any one child, and a multiplier one of its copies. An atom is
closed by a reduction with an active-path atom or by an extension: the
partner atom may sit anywhere that is not β-separated from the active path,
and the β-siblings on the way down to it become new obligations. Copies are
entered on demand and instantiated with add_instance when all existing ones
are in use. σ is a persistent value, so backtracking is just resuming an
older generator.
"""

import threading
import time
from dataclasses import dataclass, field, replace
from itertools import islice
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from certificate.checker import check_certificate
from certificate.model import Certificate, Connection, normalize_connection
from config.settings import get_settings
from matrix.builder import add_instance, build_matrix, matrix_with_multiplicity
from matrix.paths import enumerate_paths
from matrix.positions import Matrix, Mode, PathBoundExceeded, PrincipalType
from search.limits import OutcomeStatus, SearchLimits, SearchOutcome, SearchStatistics, TraceEvent
from syntax.errors import InternalCheckError
from syntax.formulas import Formula, free_variables
from unification.admissibility import check_admissible, domain_pairs, variable_prefix
from unification.prefix_unifier import PrefixSubstitution, unify_prefixes
from unification.term_unifier import TermSubstitution, unify_terms
from utils.logger import log_performance_metric, log_search_event

# stands for the copy index of a multiplier copy that is not chosen yet
FRESH = "*"


class SearchTimeout(Exception):
    """Raised at a backtrack point once the deadline passed or the search was cancelled."""


@dataclass(frozen=True)
class ProofState:
    sigma_q: TermSubstitution
    sigma_j: PrefixSubstitution
    connections: Tuple[Connection, ...] = ()
    # copies (children of multiplier positions) the proof has entered
    entered: FrozenSet[str] = frozenset()

    def enter(self, copies: Iterable[str]) -> "ProofState":
        added = self.entered.union(copies)
        return self if len(added) == len(self.entered) else replace(self, entered=added)


@dataclass(frozen=True)
class Extension:
    """A partner atom plus the obligations an extension to it opens.

    Ids are split into parts; ``fresh`` names the multiplier whose copy index
    is FRESH in ``partner`` and ``obligations`` until the step is taken.
    """
    partner: Tuple[str, ...]
    obligations: Tuple[Tuple[str, ...], ...]
    fresh: Optional[str] = None

    @property
    def rank(self) -> Tuple[int, int]:
        return (self.fresh is not None, len(self.obligations))


@dataclass
class RoundResult:
    state: Optional[ProofState]
    depth_hit: bool = False
    cap_hit: bool = False
    matrix: Optional[Matrix] = field(default=None, repr=False)


class ConnectionSearch:
    """One round of the search with a bound on the active path; owns its growing matrix."""

    def __init__(self, formula: Formula, limits: SearchLimits, depth: int,
                 deadline: Optional[float] = None, cancel: Optional[threading.Event] = None,
                 statistics: Optional[SearchStatistics] = None, trace: Optional[List[TraceEvent]] = None):
        self.limits = limits
        self.depth = depth
        self.deadline = deadline
        self.cancel = cancel
        self.statistics = statistics if statistics is not None else SearchStatistics()
        self.trace = trace
        self.matrix: Matrix = build_matrix(formula, limits.mode, copy_cap=limits.copy_cap)
        self.depth_hit = False
        self.cap_hit = False
        self._parts: Dict[str, Tuple[str, ...]] = {}
        self._chains: Dict[str, Tuple[Tuple[str, int], ...]] = {}
        self._signatures: Dict[str, FrozenSet[Tuple[str, int]]] = {}

    def _event(self, kind: str, **details) -> None:
        if self.trace is None:
            return
        self.trace.append(TraceEvent(kind, details))
        log_search_event(kind, details)

    def _tick(self) -> None:
        if self.cancel is not None and self.cancel.is_set():
            raise SearchTimeout("cancelled")
        if self.deadline is not None and time.time() > self.deadline:
            raise SearchTimeout("deadline passed")

    # position helpers

    def _split(self, position_id: str) -> Tuple[str, ...]:
        parts = self._parts.get(position_id)
        if parts is None:
            parts = tuple(position_id.split("."))
            self._parts[position_id] = parts
        return parts

    def _chain(self, atom_id: str) -> Tuple[Tuple[str, int], ...]:
        """(multiplier, copy index) for every multiplier above a position, root first."""
        chain = self._chains.get(atom_id)
        if chain is None:
            parts = self._split(atom_id)
            chain = tuple(
                (".".join(parts[:i]), int(parts[i])) for i in range(1, len(parts))
                if self.matrix[".".join(parts[:i])].is_multiplier
            )
            self._chains[atom_id] = chain
        return chain

    def _copies(self, position_id: str) -> Tuple[str, ...]:
        return tuple(f"{m}.{k}" for m, k in self._chain(position_id))

    def _signature(self, position_id: str) -> FrozenSet[Tuple[str, int]]:
        """(predicate, polarity) of every atom below a position."""
        cached = self._signatures.get(position_id)
        if cached is None:
            position = self.matrix[position_id]
            if position.is_atom:
                cached = frozenset({(position.label.predicate, position.polarity)})
            else:
                cached = frozenset().union(*(self._signature(c) for c in position.children))
            self._signatures[position_id] = cached
        return cached

    def _viable(self, position_id: str) -> bool:
        """Some atom below the position has a complementary atom somewhere in the matrix."""
        return any((predicate, 1 - polarity) in self.matrix.atom_index
                   for predicate, polarity in self._signature(position_id))

    def _first_free_copy(self, multiplier_id: str, state: ProofState) -> Optional[int]:
        for k in range(self.matrix.multiplicity[multiplier_id]):
            if f"{multiplier_id}.{k}" not in state.entered:
                return k
        return None

    # extension candidates

    def _extension(self, parts: Tuple[str, ...], template: Tuple[str, ...], path: Sequence[str],
                   fresh: Optional[str]) -> Optional[Extension]:
        """Check β-separation against the active path and collect the β-siblings below the meeting point.

        ``parts`` may carry FRESH at one copy index; ``template`` is the same
        id with copy 0 there, used to look up the structure.
        """
        meet = 1
        for atom_id in path:
            other = self._split(atom_id)
            common = 0
            for a, b in zip(parts, other):
                if a != b:
                    break
                common += 1
            if self.matrix[".".join(template[:common])].principal_type == PrincipalType.BETA:
                return None
            meet = max(meet, common)

        obligations = []
        for i in range(meet, len(parts)):
            node = self.matrix[".".join(template[:i])]
            if node.principal_type != PrincipalType.BETA:
                continue
            for child in node.children:
                index = child.rsplit(".", 1)[1]
                if index != template[i]:
                    obligations.append(parts[:i] + (index,))
        return Extension(parts, tuple(obligations), fresh)

    def extension_candidates(self, atom_id: str, path: Sequence[str], state: ProofState) -> List[Extension]:
        """Partners for ``atom_id``: atoms in entered copies, plus one fresh copy per multiplier.

        Untouched copies of a multiplier are interchangeable, so a fresh copy is
        represented once, by the atoms of copy 0, whatever index it ends up at.
        """
        atom = self.matrix[atom_id]
        context = tuple(path) + (atom_id,)
        found: List[Extension] = []
        for partner_id in self.matrix.atom_index.get((atom.label.predicate, 1 - atom.polarity), ()):
            if partner_id in context:
                continue
            parts = self._split(partner_id)
            chain = self._chain(partner_id)
            depths = [len(self._split(m)) for m, _ in chain]
            for j, (multiplier_id, k) in enumerate(chain):
                if k == 0 and all(index == 0 for _, index in chain[j + 1:]):
                    virtual = parts[:depths[j]] + (FRESH,) + parts[depths[j] + 1:]
                    extension = self._extension(virtual, parts, context, multiplier_id)
                    if extension is not None:
                        found.append(extension)
                if f"{multiplier_id}.{k}" not in state.entered:
                    break
            else:
                extension = self._extension(parts, parts, context, None)
                if extension is not None:
                    found.append(extension)
        return sorted(found, key=lambda e: e.rank)

    def _materialize(self, extension: Extension, state: ProofState) -> Optional[Tuple[str, Tuple[str, ...]]]:
        """Resolve a fresh copy to an untouched or newly added instance and join the ids."""
        index = ""
        if extension.fresh is not None:
            free = self._first_free_copy(extension.fresh, state)
            if free is None:
                count = self.matrix.multiplicity[extension.fresh]
                if count >= self.limits.copy_cap:
                    self.cap_hit = True
                    return None
                self.matrix = add_instance(self.matrix, extension.fresh)
                self.statistics.copies_added += 1
                self._event("copy", position=extension.fresh, copy=count + 1)
                free = count
            index = str(free)

        def join(parts: Tuple[str, ...]) -> str:
            return ".".join(index if part == FRESH else part for part in parts)

        return join(extension.partner), tuple(join(o) for o in extension.obligations)

    # connections

    def _connect(self, atom_id: str, partner_id: str, state: ProofState, kind: str) -> Iterator[ProofState]:
        self.statistics.connection_attempts += 1
        a, b = self.matrix[atom_id], self.matrix[partner_id]
        sigma_q = unify_terms(a.label, b.label, state.sigma_q)
        if sigma_q is None:
            return

        equations = [(a.prefix, b.prefix)]
        sigma_j = state.sigma_j
        if self.matrix.mode == Mode.INTUITIONISTIC:
            added = domain_pairs(self.matrix, sigma_q) - domain_pairs(self.matrix, state.sigma_q)
            for name, owner in sorted(added):
                tail, sigma_j = sigma_j.fresh_variable()
                equations.append((variable_prefix(self.matrix, name), self.matrix[owner].prefix + (tail,)))

        connection = normalize_connection(atom_id, partner_id)
        entered = self._copies(atom_id) + self._copies(partner_id)
        for solution in islice(unify_prefixes(equations, sigma_j), self.limits.prefix_alternative_cap):
            self.statistics.prefix_alternatives += 1
            if not check_admissible(sigma_q, solution, self.matrix):
                continue
            self._event(kind, connection=list(connection))
            yield ProofState(sigma_q, solution, state.connections + (connection,), state.entered).enter(entered)

    def _settled(self, atom_id: str, path: Sequence[str], state: ProofState) -> Optional[ProofState]:
        """A reduction that is complementary under σ as it stands; taking it loses nothing."""
        atom = self.matrix[atom_id]
        for partner_id in path:
            partner = self.matrix[partner_id]
            if partner.polarity == atom.polarity or partner.label.predicate != atom.label.predicate:
                continue
            if state.sigma_q.apply_atom(atom.label) != state.sigma_q.apply_atom(partner.label):
                continue
            if state.sigma_j.apply(atom.prefix) != state.sigma_j.apply(partner.prefix):
                continue
            connection = normalize_connection(atom_id, partner_id)
            self._event("reduction", connection=list(connection), committed=True)
            return ProofState(state.sigma_q, state.sigma_j, state.connections + (connection,), state.entered)
        return None

    def _repeats_path(self, atom_id: str, path: Sequence[str], state: ProofState) -> bool:
        """Regularity: an atom identical under σ to one already on the active path."""
        atom = self.matrix[atom_id]
        for other_id in path:
            other = self.matrix[other_id]
            if other.polarity != atom.polarity or other.label.predicate != atom.label.predicate:
                continue
            if state.sigma_q.apply_atom(atom.label) == state.sigma_q.apply_atom(other.label) \
                    and state.sigma_j.apply(atom.prefix) == state.sigma_j.apply(other.prefix):
                return True
        return False

    def extension_step(self, atom_id: str, path: Tuple[str, ...], state: ProofState) -> Iterator[ProofState]:
        """Every way to close an open atom: reductions first, then extensions.

        An extension connects ``atom_id`` with a partner off the active path,
        extends σ, and proves the partner's β-siblings with the atom pushed
        onto the path; it may add an instance when every copy is in use.
        """
        atom = self.matrix[atom_id]
        for partner_id in reversed(path):
            partner = self.matrix[partner_id]
            if partner.polarity != atom.polarity and partner.label.predicate == atom.label.predicate:
                yield from self._connect(atom_id, partner_id, state, "reduction")

        if len(path) >= self.depth:
            if (atom.label.predicate, 1 - atom.polarity) in self.matrix.atom_index:
                self.depth_hit = True
            return

        extended = path + (atom_id,)
        for extension in self.extension_candidates(atom_id, path, state):
            self._tick()
            resolved = self._materialize(extension, state)
            if resolved is None:
                continue
            partner_id, obligations = resolved
            for connected in self._connect(atom_id, partner_id, state, "extension"):
                self.statistics.branches += len(obligations)
                yield from self.prove_all(obligations, extended, connected)
                self.statistics.backtracks += 1

    # obligations

    def prove_atom(self, atom_id: str, path: Tuple[str, ...], state: ProofState) -> Iterator[ProofState]:
        if self._repeats_path(atom_id, path, state):
            return
        settled = self._settled(atom_id, path, state)
        if settled is not None:
            yield settled
            return
        solutions = self.extension_step(atom_id, path, state)
        if self.limits.restricted_backtracking:
            solutions = islice(solutions, 1)
        yield from solutions

    def prove_obligation(self, position_id: str, path: Tuple[str, ...], state: ProofState) -> Iterator[ProofState]:
        """Close every path through a subtree that contains the active path."""
        self._tick()
        position = self.matrix[position_id]
        if position.is_atom:
            yield from self.prove_atom(position_id, path, state)
        elif position.principal_type == PrincipalType.BETA:
            yield from self.prove_all(position.children, path, state)
        elif position.is_multiplier:
            for copy in self._copy_choices(position_id, state):
                yield from self.prove_obligation(copy, path, state.enter((copy,)))
        else:
            # succedent-side children first, so the conjecture is the start clause
            children = sorted(position.children, key=lambda c: self.matrix[c].polarity)
            for child in children:
                if self._viable(child):
                    yield from self.prove_obligation(child, path, state)

    def _copy_choices(self, multiplier_id: str, state: ProofState) -> Tuple[str, ...]:
        free = self._first_free_copy(multiplier_id, state)
        if free is not None:
            return (f"{multiplier_id}.{free}",)
        count = self.matrix.multiplicity[multiplier_id]
        if count < self.limits.copy_cap:
            self.matrix = add_instance(self.matrix, multiplier_id)
            self.statistics.copies_added += 1
            self._event("copy", position=multiplier_id, copy=count + 1)
            return (f"{multiplier_id}.{count}",)
        self.cap_hit = True
        return tuple(f"{multiplier_id}.{k}" for k in range(count))

    def prove_all(self, obligations: Sequence[str], path: Tuple[str, ...], state: ProofState) -> Iterator[ProofState]:
        if not obligations:
            yield state
            return
        if not all(self._viable(o) for o in obligations):
            return
        for proved in self.prove_obligation(obligations[0], path, state):
            yield from self.prove_all(obligations[1:], path, proved)

    def run(self) -> RoundResult:
        start = ProofState(TermSubstitution(), PrefixSubstitution())
        state = next(self.prove_obligation(self.matrix.root, (), start), None)
        return RoundResult(state, self.depth_hit, self.cap_hit, self.matrix)


def used_multiplicity(matrix: Matrix, connections: Tuple[Connection, ...]) -> Dict[str, int]:
    """Smallest μ whose F^μ still contains every connected atom."""
    multiplicity: Dict[str, int] = {}
    for pair in connections:
        for atom_id in pair:
            for position_id in matrix.ancestors(atom_id)[1:] + (atom_id,):
                parent = matrix[position_id].parent
                if matrix[parent].is_multiplier:
                    index = int(position_id.rsplit(".", 1)[1])
                    multiplicity[parent] = max(multiplicity.get(parent, 1), index + 1)
    return multiplicity


def irredundant_connections(matrix: Matrix, connections: Sequence[Connection],
                            bound: Optional[int] = None) -> Tuple[Connection, ...]:
    """Drop connections until each remaining one is the only connection on some path.

    Returns the input unchanged when the matrix has too many paths to enumerate
    or the connections do not span it.
    """
    bound = get_settings().path_bound if bound is None else bound
    try:
        paths = list(enumerate_paths(matrix, bound))
    except PathBoundExceeded:
        return tuple(connections)
    on_path = [[i for i, (a, b) in enumerate(connections) if a in path and b in path] for path in paths]
    counts = [len(found) for found in on_path]
    if not all(counts):
        return tuple(connections)
    containing: Dict[int, List[int]] = {}
    for path_index, found in enumerate(on_path):
        for i in found:
            containing.setdefault(i, []).append(path_index)

    kept = set(range(len(connections)))
    for i in reversed(range(len(connections))):
        if all(counts[p] >= 2 for p in containing.get(i, ())):
            kept.discard(i)
            for p in containing.get(i, ()):
                counts[p] -= 1
    return tuple(connections[i] for i in sorted(kept))


def _restrict_term_substitution(sigma_q: TermSubstitution, matrix: Matrix) -> TermSubstitution:
    normalized = sigma_q.normalized()
    return TermSubstitution({name: term for name, term in normalized.items() if name in matrix.variable_positions})


def _compact_prefix_substitution(sigma_j: PrefixSubstitution, matrix: Matrix) -> PrefixSubstitution:
    normalized = sigma_j.normalized()
    owners = matrix.character_positions()
    kept = {var: value for var, value in normalized.items() if var in owners}
    return PrefixSubstitution(kept, normalized.fresh_counter)


def build_certificate(formula: Formula, mode: Mode, matrix: Matrix, state: ProofState) -> Certificate:
    """Certificate over the smallest F^μ holding an irredundant subset of the proof's connections."""
    connections = tuple(sorted(set(state.connections)))
    final = matrix_with_multiplicity(formula, mode, used_multiplicity(matrix, connections))
    connections = irredundant_connections(final, connections)
    final = matrix_with_multiplicity(formula, mode, used_multiplicity(final, connections))
    return Certificate(
        formula=formula,
        mode=mode,
        multiplicity=dict(final.multiplicity),
        sigma_q=_restrict_term_substitution(state.sigma_q, final),
        sigma_j=_compact_prefix_substitution(state.sigma_j, final),
        connections=connections,
    )


def prove(formula: Formula, limits: Optional[SearchLimits] = None,
          cancel: Optional[threading.Event] = None) -> SearchOutcome:
    """Search for a matrix proof of a closed formula, deepening the active-path bound by one per round.

    Every Proved outcome carries a certificate the independent checker has
    accepted; a rejection raises InternalCheckError.
    """
    if free_variables(formula):
        raise ValueError(f"prove expects a closed formula, free: {sorted(free_variables(formula))}")
    limits = limits or SearchLimits.from_settings()
    start = time.time()
    deadline = start + limits.timeout if limits.timeout is not None else None
    statistics = SearchStatistics()
    trace: Optional[List[TraceEvent]] = [] if limits.trace else None

    def finish(status: OutcomeStatus, certificate: Optional[Certificate] = None, reason: str = "") -> SearchOutcome:
        statistics.elapsed_ms = (time.time() - start) * 1000
        log_performance_metric("prove", statistics.elapsed_ms, {"status": status.value, **statistics.as_dict()})
        return SearchOutcome(status, certificate, statistics, trace or [], reason)

    depth = limits.depth_start
    try:
        while True:
            statistics.rounds += 1
            statistics.final_depth = depth
            if trace is not None:
                trace.append(TraceEvent("round", {"depth": depth}))
            logger.debug(f"Search round {statistics.rounds} with active-path bound {depth}")

            result = ConnectionSearch(formula, limits, depth, deadline, cancel, statistics, trace).run()
            if result.state is not None:
                certificate = build_certificate(formula, limits.mode, result.matrix, result.state)
                try:
                    verdict = check_certificate(formula, certificate, limits.mode)
                except PathBoundExceeded as e:
                    return finish(OutcomeStatus.EXHAUSTED_BOUNDS, reason=f"certificate too large to check: {e}")
                if not verdict.accepted:
                    logger.error(f"Search produced a rejected certificate: {verdict.reason}")
                    raise InternalCheckError(f"certificate rejected by checker: {verdict.reason}")
                return finish(OutcomeStatus.PROVED, certificate)

            if not result.depth_hit:
                reason = "copy cap reached" if result.cap_hit else "search space exhausted"
                return finish(OutcomeStatus.EXHAUSTED_BOUNDS, reason=reason)
            if depth >= limits.max_depth:
                return finish(OutcomeStatus.EXHAUSTED_BOUNDS, reason=f"active-path bound {depth} exhausted")
            depth += 1
    except SearchTimeout as e:
        return finish(OutcomeStatus.TIMEOUT, reason=str(e))
