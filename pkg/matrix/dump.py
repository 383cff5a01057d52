"""
Plain-text debug dump of a position tree, used by golden tests.

One line per position, depth-first in child order, two spaces of indent per level:

    <id> <type> pol=<0|1> prefix=<chars or ε> inst=<copy indices> :: <label>
"""

from typing import List

from matrix.positions import Matrix, format_prefix
from syntax.printer import print_formula


def dump_matrix(matrix: Matrix) -> str:
    lines: List[str] = [f"# matrix mode={matrix.mode.value} positions={len(matrix.positions)}"]

    def visit(position_id: str, depth: int) -> None:
        position = matrix.positions[position_id]
        instance = ",".join(str(i) for i in position.instance) or "-"
        lines.append(
            f"{'  ' * depth}{position.id} {position.principal_type.value} pol={position.polarity} "
            f"prefix={format_prefix(position.prefix)} inst={instance} :: {print_formula(position.label)}"
        )
        for child in position.children:
            visit(child, depth + 1)

    visit(matrix.root, 0)
    return "\n".join(lines) + "\n"
