"""The overgroup towers E_n^{(m,m')}(d), F_n^{(m,m')}(d) and E_n^m(d).

Each family is defined level by level: below depth ``m`` it is all of
Aut(T_n(d)); from depth ``m`` on an element belongs iff its ``d`` children
belong (one level shorter) and one sign character vanishes on it:

* E with ``m'``:  ``sgn1_mm(., m, m')``
* F with ``m'``:  ``sgn2_mm(., m, m')``
* E without ``m'``:  ``sgn_m(., m)``

An extra family ``Aut`` stands for the full automorphism group.
"""

import random
import re
from dataclasses import dataclass
from itertools import product
from math import factorial

from . import perm as P
from .automorphism import (TreeAutomorphism, TreeAutomorphism as _TA, identity,
                           random_automorphism, _random, _rng)
from .errors import OutOfRange, ShapeMismatch, TooLarge
from .signs import _truncated_sign, _upper
from .tree_index import TreeShape, vertex_offset

FAMILIES = ("E", "F", "Aut")


@dataclass(frozen=True)
class OvergroupSpec:
    family: str
    degree: int
    m: int = 1
    mp: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.degree < 2:
            raise OutOfRange("degree must be >= 2")
        if self.family == "Aut":
            return
        if self.m < 1:
            raise OutOfRange("m must be positive")
        if self.mp is not None and not self.m > self.mp > 0:
            raise OutOfRange(f"need m > m' > 0, got m={self.m}, m'={self.mp}")
        if self.family == "F" and self.mp is None:
            raise ValueError("family F needs m'")

    @classmethod
    def parse(cls, text: str) -> "OvergroupSpec":
        """Read ``E:d=3,m=2``, ``F:d=3,m=3,mp=1`` or ``Aut:d=2``."""
        match = re.fullmatch(r"\s*(E|F|Aut)\s*:\s*(.*?)\s*", text)
        if not match:
            raise ValueError(f"cannot parse overgroup spec {text!r}")
        fields = {}
        for item in filter(None, (x.strip() for x in match.group(2).split(","))):
            key, sep, value = item.partition("=")
            if not sep or key.strip() not in ("d", "m", "mp") or key.strip() in fields:
                raise ValueError(f"bad field {item!r} in {text!r}")
            fields[key.strip()] = int(value)
        if "d" not in fields:
            raise ValueError(f"spec {text!r} lacks d")
        family = match.group(1)
        if family == "Aut":
            if set(fields) != {"d"}:
                raise ValueError("Aut takes only d")
            return cls("Aut", fields["d"])
        if "m" not in fields:
            raise ValueError(f"spec {text!r} lacks m")
        return cls(family, fields["d"], fields["m"], fields.get("mp"))

    def __str__(self):
        if self.family == "Aut":
            return f"Aut:d={self.degree}"
        tail = f",mp={self.mp}" if self.mp is not None else ""
        return f"{self.family}:d={self.degree},m={self.m}{tail}"

    @property
    def threshold(self) -> int:
        """Smallest depth at which the sign condition applies."""
        return float("inf") if self.family == "Aut" else self.m

    def character(self, a: TreeAutomorphism) -> int:
        """The sign whose kernel cuts the group out at ``a``'s top level."""
        if self.family == "Aut":
            return 1
        if self.mp is None:
            return _truncated_sign(a, self.m)
        if self.family == "F":
            return _upper(a, self.mp, self.m - self.mp)
        return _upper(a, self.mp, self.m - self.mp) * _truncated_sign(a, self.mp)


def is_member(a: TreeAutomorphism, spec: OvergroupSpec) -> bool:
    if a.degree != spec.degree:
        raise ShapeMismatch(f"element has degree {a.degree}, spec has {spec.degree}")
    return _member(a, spec)


def _member(a, spec):
    if a.depth < spec.threshold:
        return True
    if spec.character(a) != 1:
        return False
    return all(_member(c, spec) for c in a.children)


def aut_order(d: int, n: int) -> int:
    return factorial(d) ** ((d ** n - 1) // (d - 1))


def order(spec: OvergroupSpec, n: int) -> int:
    """Group order; the index in Aut(T_n(d)) is ``2**((d**(n-m+1)-1)/(d-1))``."""
    if n < 0:
        raise OutOfRange("depth must be >= 0")
    d = spec.degree
    full = aut_order(d, n)
    if n < spec.threshold:
        return full
    return full >> ((d ** (n - spec.m + 1) - 1) // (d - 1))


def enumerate_members(spec: OvergroupSpec, n: int, limit: int = 10 ** 6) -> list:
    """All members at depth ``n`` in a fixed order; ``TooLarge`` past ``limit``."""
    size = order(spec, n)
    if size > limit:
        raise TooLarge(f"{spec} at depth {n} has {size} elements (limit {limit})")
    return _enumerate(spec, n)


def _enumerate(spec, n):
    d = spec.degree
    if n == 0:
        return [identity(d, 0)]
    lower = _enumerate(spec, n - 1)
    check = n >= spec.threshold
    out = []
    for root in P.all_permutations(d):
        for kids in product(lower, repeat=d):
            a = _TA._raw(d, n, root, kids)
            if not check or spec.character(a) == 1:
                out.append(a)
    return out


# sampling

_FLIP = (1, 0)


def _root_flips(spec):
    """Whether a transposition at the top vertex flips the character."""
    d = spec.degree
    t = P.from_cycles(d, (0, 1))
    probe = _TA._raw(d, spec.m, t, (identity(d, spec.m - 1),) * d)
    return spec.character(probe) == -1


def random_member(spec: OvergroupSpec, n: int, seed=None) -> TreeAutomorphism:
    """Uniform member, sampled top-down.

    Children are sampled recursively.  If the character sees the top
    permutation, the root is drawn uniformly and multiplied by a fixed
    transposition when the sign is wrong, a bijection between the two cosets
    of the character's kernel.  Otherwise (even ``d``, or family F) the
    constraint is met by redrawing child 0, which is a rejection step on a
    single uniform component and again leaves the distribution uniform.
    """
    rng = _rng(seed)
    if n < spec.threshold:
        return random_automorphism(TreeShape(spec.degree, n), rng)
    return _sample(spec, n, rng, _root_flips(spec))


_MAX_REDRAWS = 10_000


def _sample(spec, n, rng, root_flips):
    d = spec.degree
    if n < spec.threshold:
        return _random(d, n, rng)
    kids = [_sample(spec, n - 1, rng, root_flips) for _ in range(d)]
    root = tuple(rng.sample(range(d), d))
    a = _TA._raw(d, n, root, tuple(kids))
    if spec.character(a) == 1:
        return a
    if root_flips:
        root = tuple(root[i] for i in (1, 0, *range(2, d)))
        return _TA._raw(d, n, root, tuple(kids))
    for _ in range(_MAX_REDRAWS):
        kids[0] = _sample(spec, n - 1, rng, root_flips)
        a = _TA._raw(d, n, root, tuple(kids))
        if spec.character(a) == 1:
            return a
    raise RuntimeError(f"no member found after {_MAX_REDRAWS} redraws of child 0")


# the parity-vector view

def constraint_rows(spec: OvergroupSpec, n: int) -> list:
    """The membership conditions as linear forms over GF(2).

    Coordinates are the internal vertices in breadth-first order; an element
    with vertex parity vector ``x`` (1 for an odd local permutation) is a member
    iff every row ``r`` has ``popcount(r & x)`` even.  Each sign character is a
    product of vertex parities, with exponent ``d**(m-1-r)`` at relative
    level ``r`` of the truncation it reads.
    """
    if spec.family == "Aut" or n < spec.m:
        return []
    d, m, mp = spec.degree, spec.m, spec.mp

    def weight(r):
        w = 0
        if mp is None:
            w = d ** (m - 1 - r) % 2
        else:
            if r >= mp:
                w ^= d ** (m - 1 - r) % 2
            if spec.family == "E" and r < mp:
                w ^= d ** (mp - 1 - r) % 2
        return w

    weights = [weight(r) for r in range(m)]
    rows = []
    for level in range(n - m + 1):
        for k in range(d ** level):
            row = 0
            for r, w in enumerate(weights):
                if not w:
                    continue
                base = vertex_offset(level + r, d)
                for j in range(d ** r):
                    row |= 1 << (base + k + d ** level * j)
            rows.append(row)
    return rows


def _echelon(rows):
    basis = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return basis


def gf2_rank(rows) -> int:
    return len(_echelon(rows))


def _kernel_basis(rows, size):
    # reduced row echelon form, then one kernel vector per free column
    basis = _echelon(rows)
    pivots = sorted(basis)
    for p in pivots:
        for q in pivots:
            if q != p and basis[q] >> p & 1:
                basis[q] ^= basis[p]
    free = [c for c in range(size) if c not in basis]
    kernel = []
    for f in free:
        v = 1 << f
        for p, row in basis.items():
            if row >> f & 1:
                v |= 1 << p
        kernel.append(v)
    return kernel


def order_from_constraints(spec: OvergroupSpec, n: int) -> int:
    """``(d!)**V / 2**rank``: each admissible parity pattern has ``(d!/2)**V`` lifts."""
    d = spec.degree
    return aut_order(d, n) >> gf2_rank(constraint_rows(spec, n))


def orbit_of_leaf(spec: OvergroupSpec, n: int, i: int, *, max_depth: int = 20) -> set:
    """The orbit of leaf ``i``.

    An element moves leaf ``i`` by its local permutations along the path from
    the root to ``i``, and the attainable steps depend only on their parities.
    For ``d >= 3`` even local permutations already move any branch to any
    other, so the orbit is every leaf.  For ``d = 2`` the path parities range
    over the projection of the constraint kernel, which is computed exactly.
    """
    d = spec.degree
    if not 0 <= i < d ** n:
        raise OutOfRange(f"leaf index {i} outside 0..{d ** n - 1}")
    if d >= 3 or n < spec.threshold:
        return set(range(d ** n))
    if n > max_depth:
        raise TooLarge(f"orbit computation limited to depth {max_depth}")
    size = vertex_offset(n, d)
    path = [vertex_offset(level, 2) + (i % 2 ** level) for level in range(n)]
    steps = set()
    for v in _kernel_basis(constraint_rows(spec, n), size):
        step = sum(1 << level for level, u in enumerate(path) if v >> u & 1)
        if step:
            steps.add(step)
    span = {0}
    for s in steps:
        span |= {x ^ s for x in span}
    return {i ^ s for s in span}


def orbit_by_enumeration(spec: OvergroupSpec, n: int, i: int, limit: int = 10 ** 6) -> set:
    from .automorphism import act_on_leaf
    return {act_on_leaf(a, i) for a in enumerate_members(spec, n, limit)}
