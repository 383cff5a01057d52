"""
Prefix (T-string) unification for σ_J.

Equations are pairs of prefix strings built from matrix characters. The
solver is a rule system over the heads of both sides: identical heads are
stripped, a variable head is either erased, bound to the other head, or
split around it with a fresh variable. Solutions are enumerated lazily and
deduplicated on the variables of the input equations.
"""

from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from matrix.positions import Prefix, PrefixChar

Equation = Tuple[Prefix, Prefix]


class PrefixSubstitution:
    """Immutable map from prefix variables to prefix strings (possibly empty)."""

    __slots__ = ("_bindings", "_fresh")

    def __init__(self, bindings: Optional[Mapping[PrefixChar, Prefix]] = None, fresh: int = 0):
        self._bindings: Dict[PrefixChar, Prefix] = dict(bindings or {})
        self._fresh = fresh

    def __contains__(self, var: PrefixChar) -> bool:
        return var in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def __iter__(self):
        return iter(self._bindings)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrefixSubstitution) and self.normalized()._bindings == other.normalized()._bindings

    def __hash__(self) -> int:
        return hash(frozenset(self.normalized()._bindings.items()))

    def __repr__(self) -> str:
        shown = {str(k): "".join(str(c) for c in v) or "ε" for k, v in self._bindings.items()}
        return f"PrefixSubstitution({shown})"

    def get(self, var: PrefixChar) -> Optional[Prefix]:
        return self._bindings.get(var)

    def items(self):
        return iter(self._bindings.items())

    def bind(self, var: PrefixChar, value: Prefix) -> "PrefixSubstitution":
        return PrefixSubstitution({**self._bindings, var: tuple(value)}, self._fresh)

    def fresh_variable(self) -> Tuple[PrefixChar, "PrefixSubstitution"]:
        """A variable never seen before, plus the substitution that reserved it."""
        var = PrefixChar(variable=True, owner=f"#{self._fresh}")
        return var, PrefixSubstitution(self._bindings, self._fresh + 1)

    @property
    def fresh_counter(self) -> int:
        return self._fresh

    def apply(self, prefix: Sequence[PrefixChar]) -> Prefix:
        result: List[PrefixChar] = []
        for char in prefix:
            if char.variable and char in self._bindings:
                result.extend(self.apply(self._bindings[char]))
            else:
                result.append(char)
        return tuple(result)

    def normalized(self) -> "PrefixSubstitution":
        return PrefixSubstitution({k: self.apply(v) for k, v in self._bindings.items()}, self._fresh)

    def as_dict(self) -> Dict[PrefixChar, Prefix]:
        return dict(self._bindings)


def _solve(equations: List[Equation], sigma: PrefixSubstitution, depth: int) -> Iterator[PrefixSubstitution]:
    if not equations:
        yield sigma
        return

    (left, right), rest = equations[0], equations[1:]
    left, right = sigma.apply(left), sigma.apply(right)
    i = 0
    while i < len(left) and i < len(right) and left[i] == right[i]:
        i += 1
    left, right = left[i:], right[i:]

    if not left and not right:
        yield from _solve(rest, sigma, depth)
        return

    if not left or not right:
        remainder = left or right
        if any(not c.variable for c in remainder):
            return
        for var in remainder:
            sigma = sigma.bind(var, ())
        yield from _solve(rest, sigma, depth)
        return

    x, y = left[0], right[0]
    if not x.variable and not y.variable:
        return
    if not x.variable:
        left, right, x, y = right, left, y, x
    if depth <= 0:
        return

    # x is erased
    yield from _solve([(left[1:], right)] + rest, sigma.bind(x, ()), depth - 1)

    if y.variable:
        # y is erased
        yield from _solve([(left, right[1:])] + rest, sigma.bind(y, ()), depth - 1)
        # x and y coincide
        yield from _solve([(left[1:], right[1:])] + rest, sigma.bind(x, (y,)), depth - 1)
        # y is a proper prefix of x
        x_tail, extended = sigma.fresh_variable()
        yield from _solve(
            [((x_tail,) + left[1:], right[1:])] + rest, extended.bind(x, (y, x_tail)), depth - 1,
        )
        # x is a proper prefix of y
        y_tail, extended = sigma.fresh_variable()
        yield from _solve(
            [(left[1:], (y_tail,) + right[1:])] + rest, extended.bind(y, (x, y_tail)), depth - 1,
        )
    else:
        # x starts with the constant y
        x_tail, extended = sigma.fresh_variable()
        yield from _solve(
            [((x_tail,) + left[1:], right[1:])] + rest, extended.bind(x, (y, x_tail)), depth - 1,
        )


def _key(sigma: PrefixSubstitution, variables: Set[PrefixChar]) -> Tuple:
    # fresh variables are renamed by first occurrence so equal shapes collapse
    renaming: Dict[PrefixChar, int] = {}
    parts = []
    for var in sorted(variables):
        image = []
        for c in sigma.apply((var,)):
            if c.variable and c not in variables:
                image.append(("fresh", renaming.setdefault(c, len(renaming))))
            else:
                image.append((c.variable, c.owner))
        parts.append((var.owner, tuple(image)))
    return tuple(parts)


def unify_prefixes(equations: Sequence[Equation], sigma: Optional[PrefixSubstitution] = None,
                   depth: Optional[int] = None) -> Iterator[PrefixSubstitution]:
    """Lazily enumerate extensions of σ_J that make every equation literal-equal.

    An empty enumeration means the equations have no unifier within the
    rule depth (default: twice the total equation length plus four).
    """
    sigma = sigma if sigma is not None else PrefixSubstitution()
    equations = [(tuple(l), tuple(r)) for l, r in equations]
    if depth is None:
        depth = 2 * sum(len(l) + len(r) for l, r in equations) + 4

    variables = {c for l, r in equations for c in sigma.apply(l) + sigma.apply(r) if c.variable}
    seen = set()
    for solution in _solve(equations, sigma, depth):
        key = _key(solution, variables)
        if key in seen:
            continue
        seen.add(key)
        yield solution


def solves(sigma: PrefixSubstitution, equations: Sequence[Equation]) -> bool:
    """Direct check that every equation becomes literally equal."""
    return all(sigma.apply(l) == sigma.apply(r) for l, r in equations)
