"""Labels for the vertices and leaves of the rooted d-ary tree T_n(d).

A vertex at level m is named by its path ``(l_m, ..., l_1)``; ``l_1`` is the
branch taken at the root and ``l_m`` the last branch.  Components are 0-based.
Leaves of ``T_n(d)`` are numbered ``sum(l_i * d**(i-1))``, so the root branch
is the least significant base-d digit and two leaves lie below the same
level-m vertex exactly when they agree modulo ``d**m``.
"""

from dataclasses import dataclass

from .errors import OutOfRange


@dataclass(frozen=True)
class TreeShape:
    degree: int
    depth: int

    def __post_init__(self):
        if self.degree < 2:
            raise OutOfRange(f"degree must be >= 2, got {self.degree}")
        if self.depth < 0:
            raise OutOfRange(f"depth must be >= 0, got {self.depth}")

    @property
    def leaf_count(self) -> int:
        return self.degree ** self.depth

    @property
    def vertex_count(self) -> int:
        return (self.degree ** (self.depth + 1) - 1) // (self.degree - 1)

    @property
    def internal_vertex_count(self) -> int:
        """Vertices carrying a local permutation (all levels above the leaves)."""
        return (self.degree ** self.depth - 1) // (self.degree - 1)

    def level_size(self, m: int) -> int:
        return self.degree ** m


def _check_level(m: int, shape: TreeShape):
    if not 0 <= m <= shape.depth:
        raise OutOfRange(f"level {m} outside 0..{shape.depth}")


def leaf_index(path, shape: TreeShape) -> int:
    path = tuple(path)
    if len(path) != shape.depth:
        raise OutOfRange(f"path has level {len(path)}, tree depth is {shape.depth}")
    d = shape.degree
    value = 0
    for comp in path:  # (l_n, ..., l_1): most significant first
        if not 0 <= comp < d:
            raise OutOfRange(f"path component {comp} outside 0..{d - 1}")
        value = value * d + comp
    return value


def path_of_index(i: int, shape: TreeShape) -> tuple:
    if not 0 <= i < shape.leaf_count:
        raise OutOfRange(f"leaf index {i} outside 0..{shape.leaf_count - 1}")
    d = shape.degree
    digits = []
    for _ in range(shape.depth):
        i, r = divmod(i, d)
        digits.append(r)
    return tuple(reversed(digits))


def vertex_label(path, degree: int) -> int:
    """Index of a level-m vertex among the ``d**m`` vertices of its level."""
    value = 0
    for comp in path:
        value = value * degree + comp
    return value


def same_subtree(i: int, j: int, m: int, shape: TreeShape) -> bool:
    _check_level(m, shape)
    for x in (i, j):
        if not 0 <= x < shape.leaf_count:
            raise OutOfRange(f"leaf index {x} outside 0..{shape.leaf_count - 1}")
    return i % shape.degree ** m == j % shape.degree ** m


def block_of(i: int, m: int, shape: TreeShape) -> int:
    """Label of the level-m vertex above leaf ``i``."""
    _check_level(m, shape)
    return i % shape.degree ** m


def blocks(m: int, shape: TreeShape) -> list:
    """The leaf blocks below each level-m vertex, ordered by vertex label."""
    _check_level(m, shape)
    step = shape.degree ** m
    return [list(range(k, shape.leaf_count, step)) for k in range(step)]


def vertex_offset(level: int, degree: int) -> int:
    """Position of the first level-``level`` vertex in breadth-first order."""
    return (degree ** level - 1) // (degree - 1)
