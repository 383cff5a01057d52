"""
Non-clausal matrix: position tree, multiplicity and paths.
"""

from matrix.builder import add_instance, build_matrix, matrix_with_multiplicity, prefix_of
from matrix.dump import dump_matrix
from matrix.paths import count_paths, enumerate_paths
from matrix.positions import (
    CopyLimitExceeded, Matrix, Mode, PathBoundExceeded, Position, Prefix, PrefixChar,
    PrincipalType, format_prefix,
)

__all__ = [
    "add_instance", "build_matrix", "matrix_with_multiplicity", "prefix_of", "dump_matrix",
    "count_paths", "enumerate_paths", "CopyLimitExceeded", "Matrix", "Mode",
    "PathBoundExceeded", "Position", "Prefix", "PrefixChar", "PrincipalType", "format_prefix",
]
