"""
Path counting and lazy path enumeration (checker scale only).
"""

from typing import FrozenSet, Iterator, Optional, Tuple

from config.settings import get_settings
from matrix.positions import Matrix, PathBoundExceeded, PrincipalType


def count_paths(matrix: Matrix, position_id: Optional[str] = None) -> int:
    """Number of paths below a position: β sums, everything else multiplies."""
    position = matrix.positions[position_id or matrix.root]
    if position.is_atom:
        return 1
    counts = [count_paths(matrix, child) for child in position.children]
    if position.principal_type == PrincipalType.BETA:
        return sum(counts)
    total = 1
    for c in counts:
        total *= c
    return total


def _paths(matrix: Matrix, position_id: str) -> Iterator[Tuple[str, ...]]:
    position = matrix.positions[position_id]
    if position.is_atom:
        yield (position_id,)
    elif position.principal_type == PrincipalType.BETA:
        for child in position.children:
            yield from _paths(matrix, child)
    else:
        yield from _combine(matrix, position.children)


def _combine(matrix: Matrix, children: Tuple[str, ...]) -> Iterator[Tuple[str, ...]]:
    if not children:
        yield ()
        return
    for head in _paths(matrix, children[0]):
        for tail in _combine(matrix, children[1:]):
            yield head + tail


def enumerate_paths(matrix: Matrix, bound: Optional[int] = None) -> Iterator[FrozenSet[str]]:
    """Lazily yield every path of the matrix as a set of atom position ids.

    Raises PathBoundExceeded before yielding anything when the matrix has
    more paths than ``bound``.
    """
    bound = get_settings().path_bound if bound is None else bound
    total = count_paths(matrix)
    if total > bound:
        raise PathBoundExceeded(f"Matrix has {total} paths, bound is {bound}")
    return (frozenset(path) for path in _paths(matrix, matrix.root))
