"""Automorphisms of T_n(d) as nested wreath-product elements.

An automorphism of depth ``n`` is stored as the permutation ``root`` it induces
on the ``d`` level-1 vertices together with ``d`` child automorphisms of depth
``n - 1``; ``children[k]`` is the action on the subtree hanging at branch
``k`` (read as a map from that subtree onto the subtree at ``root[k]``).

With leaf labels as in :mod:`arboreal.tree_index` a leaf ``i`` splits as
``i = k + d*w`` (``k`` the root branch) and

    a(k + d*w) = root[k] + d * children[k](w).

``compose(a, b)`` is ``a`` after ``b``.
"""

import random
from itertools import product

from . import perm as P
from .errors import NotTreeRespecting, OutOfRange, ShapeMismatch
from .tree_index import TreeShape


class TreeAutomorphism:
    __slots__ = ("degree", "depth", "root", "children", "_hash")

    def __init__(self, degree: int, depth: int, root, children):
        if depth == 0:
            if tuple(root) or tuple(children):
                raise ValueError("depth-0 automorphism has no root or children")
            root, children = (), ()
        else:
            root = P.check(root)
            children = tuple(children)
            if len(root) != degree or len(children) != degree:
                raise ShapeMismatch(f"expected {degree} root images and children")
            for c in children:
                if not isinstance(c, TreeAutomorphism):
                    raise TypeError("children must be TreeAutomorphism values")
                if c.degree != degree or c.depth != depth - 1:
                    raise ShapeMismatch("children must have degree d and depth n-1")
        _init(self, degree, depth, root, children)

    @classmethod
    def _raw(cls, degree, depth, root, children):
        obj = object.__new__(cls)
        _init(obj, degree, depth, root, children)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TreeAutomorphism is immutable")

    @property
    def shape(self) -> TreeShape:
        return TreeShape(self.degree, self.depth)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, TreeAutomorphism):
            return NotImplemented
        return (self.degree == other.degree and self.depth == other.depth
                and self.root == other.root and self.children == other.children)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.degree, self.depth, self.root, self.children))
            object.__setattr__(self, "_hash", h)
        return h

    def __mul__(self, other):
        return compose(self, other)

    def __repr__(self):
        if self.depth == 0:
            return f"TreeAutomorphism(d={self.degree}, id)"
        return (f"TreeAutomorphism(d={self.degree}, n={self.depth}, "
                f"leaves={list(to_leaf_permutation(self))})")

    def is_identity(self) -> bool:
        return self == identity(self.degree, self.depth)

    def inverse(self):
        return invert(self)


def _init(obj, degree, depth, root, children):
    object.__setattr__(obj, "degree", degree)
    object.__setattr__(obj, "depth", depth)
    object.__setattr__(obj, "root", root)
    object.__setattr__(obj, "children", children)
    object.__setattr__(obj, "_hash", None)


_IDENTITY = {}


def identity(degree: int, depth: int) -> TreeAutomorphism:
    key = (degree, depth)
    e = _IDENTITY.get(key)
    if e is None:
        TreeShape(degree, depth)
        if depth == 0:
            e = TreeAutomorphism._raw(degree, 0, (), ())
        else:
            c = identity(degree, depth - 1)
            e = TreeAutomorphism._raw(degree, depth, P.identity(degree), (c,) * degree)
        _IDENTITY[key] = e
    return e


def node(root, children) -> TreeAutomorphism:
    """Build an automorphism from a root permutation and its ``d`` children."""
    children = tuple(children)
    if not children:
        raise ShapeMismatch("need d children")
    c0 = children[0]
    return TreeAutomorphism(c0.degree, c0.depth + 1, root, children)


def rooted(root, depth: int) -> TreeAutomorphism:
    """The automorphism acting by ``root`` at the top vertex and trivially below."""
    root = P.check(root)
    if depth < 1:
        raise OutOfRange("a root permutation needs depth >= 1")
    c = identity(len(root), depth - 1)
    return TreeAutomorphism(len(root), depth, root, (c,) * len(root))


def at_vertex(shape: TreeShape, level: int, vertex: int, p) -> TreeAutomorphism:
    """Automorphism acting by ``p`` at one vertex and trivially elsewhere.

    ``vertex`` is the label of a level-``level`` vertex (its leaves are those
    congruent to it modulo ``d**level``).
    """
    d, n = shape.degree, shape.depth
    if not 0 <= level < n:
        raise OutOfRange(f"vertex level {level} outside 0..{n - 1}")
    if not 0 <= vertex < d ** level:
        raise OutOfRange(f"vertex label {vertex} outside 0..{d ** level - 1}")
    p = P.check(p)
    if len(p) != d:
        raise ShapeMismatch("local permutation must have degree d")
    return _at_vertex(d, n, level, vertex, p)


def _at_vertex(d, n, level, vertex, p):
    if level == 0:
        return TreeAutomorphism._raw(d, n, p, (identity(d, n - 1),) * d)
    k, rest = vertex % d, vertex // d
    kids = [identity(d, n - 1)] * d
    kids[k] = _at_vertex(d, n - 1, level - 1, rest, p)
    return TreeAutomorphism._raw(d, n, P.identity(d), tuple(kids))


def _check_pair(a, b):
    if a.degree != b.degree or a.depth != b.depth:
        raise ShapeMismatch(
            f"shapes differ: ({a.degree},{a.depth}) vs ({b.degree},{b.depth})")


def compose(a: TreeAutomorphism, b: TreeAutomorphism) -> TreeAutomorphism:
    """``a`` after ``b`` (``b`` acts first)."""
    _check_pair(a, b)
    return _compose(a, b)


def _compose(a, b):
    if a.depth == 0:
        return a
    br = b.root
    ar = a.root
    root = tuple([ar[k] for k in br])
    if a.depth == 1:
        kids = a.children
    else:
        ac, bc = a.children, b.children
        kids = tuple([_compose(ac[br[k]], bc[k]) for k in range(a.degree)])
    return TreeAutomorphism._raw(a.degree, a.depth, root, kids)


def invert(a: TreeAutomorphism) -> TreeAutomorphism:
    if a.depth == 0:
        return a
    inv = P.inverse(a.root)
    if a.depth == 1:
        kids = a.children
    else:
        kids = tuple([invert(a.children[inv[j]]) for j in range(a.degree)])
    return TreeAutomorphism._raw(a.degree, a.depth, inv, kids)


def commutator(a: TreeAutomorphism, b: TreeAutomorphism) -> TreeAutomorphism:
    """``a b a^-1 b^-1``."""
    return compose(compose(a, b), compose(invert(a), invert(b)))


def power(a: TreeAutomorphism, k: int) -> TreeAutomorphism:
    if k < 0:
        a, k = invert(a), -k
    out = identity(a.degree, a.depth)
    base = a
    while k:
        if k & 1:
            out = _compose(out, base)
        base = _compose(base, base)
        k >>= 1
    return out


def act_on_leaf(a: TreeAutomorphism, i: int) -> int:
    d = a.degree
    if not 0 <= i < d ** a.depth:
        raise OutOfRange(f"leaf index {i} outside 0..{d ** a.depth - 1}")
    out, place = 0, 1
    while a.depth:
        i, k = divmod(i, d)
        out += a.root[k] * place
        place *= d
        a = a.children[k]
    return out


def to_leaf_permutation(a: TreeAutomorphism) -> tuple:
    return tuple(_leaf_images(a))


def _leaf_images(a):
    if a.depth == 0:
        return [0]
    d = a.degree
    if a.depth == 1:
        return list(a.root)
    sub = [_leaf_images(c) for c in a.children]
    size = len(sub[0])
    out = [0] * (size * d)
    for k in range(d):
        rk, pk = a.root[k], sub[k]
        for w in range(size):
            out[k + d * w] = rk + d * pk[w]
    return out


def from_leaf_permutation(p, shape: TreeShape) -> TreeAutomorphism:
    """Inverse of :func:`to_leaf_permutation`.

    Raises :class:`NotTreeRespecting` when ``p`` does not permute the level
    blocks of some level as sets.
    """
    p = P.check(p)
    if len(p) != shape.leaf_count:
        raise ShapeMismatch(f"permutation has degree {len(p)}, expected {shape.leaf_count}")
    return _from_leaf(list(p), shape.degree, shape.depth)


def _from_leaf(p, d, n):
    if n == 0:
        return identity(d, 0)
    root = tuple(p[k] % d for k in range(d))
    if len(set(root)) != d:
        raise NotTreeRespecting("level-1 blocks are not permuted")
    kids = []
    for k in range(d):
        seg = p[k::d]
        if any(x % d != root[k] for x in seg):
            raise NotTreeRespecting(f"block {k} is split by the permutation")
        kids.append(_from_leaf([x // d for x in seg], d, n - 1))
    return TreeAutomorphism._raw(d, n, root, tuple(kids))


def _check_level(a, m):
    if not 0 <= m <= a.depth:
        raise OutOfRange(f"level {m} outside 0..{a.depth}")


def restrict(a: TreeAutomorphism, m: int) -> TreeAutomorphism:
    """The action of ``a`` on the top ``m`` levels (res_m)."""
    _check_level(a, m)
    return _restrict(a, m)


def _restrict(a, m):
    if m == a.depth:
        return a
    if m == 0:
        return identity(a.degree, 0)
    kids = tuple([_restrict(c, m - 1) for c in a.children])
    return TreeAutomorphism._raw(a.degree, m, a.root, kids)


def decompose(a: TreeAutomorphism, m: int):
    """Split ``a`` into its top ``m`` levels and the ``d**m`` parts hanging below.

    ``hanging[k]`` is the section at the level-m vertex ``k``.
    """
    _check_level(a, m)
    return _restrict(a, m), _hanging(a, m)


def _hanging(a, m):
    if m == 0:
        return [a]
    d = a.degree
    parts = [_hanging(c, m - 1) for c in a.children]
    out = [None] * d ** m
    for j in range(d):
        for kk, h in enumerate(parts[j]):
            out[j + d * kk] = h
    return out


def section(a: TreeAutomorphism, m: int, k: int) -> TreeAutomorphism:
    """The hanging part of ``a`` at level-m vertex ``k``."""
    _check_level(a, m)
    d = a.degree
    if not 0 <= k < d ** m:
        raise OutOfRange(f"vertex label {k} outside 0..{d ** m - 1}")
    for _ in range(m):
        k, j = divmod(k, d)
        a = a.children[j]
    return a


def recompose(top: TreeAutomorphism, hanging) -> TreeAutomorphism:
    hanging = list(hanging)
    d, m = top.degree, top.depth
    if len(hanging) != d ** m:
        raise ShapeMismatch(f"need {d ** m} hanging parts, got {len(hanging)}")
    depth = hanging[0].depth
    for h in hanging:
        if h.degree != d or h.depth != depth:
            raise ShapeMismatch("hanging parts must share degree and depth")
    return _recompose(top, hanging)


def _recompose(top, hanging):
    if top.depth == 0:
        return hanging[0]
    d = top.degree
    kids = tuple([_recompose(top.children[j], hanging[j::d]) for j in range(d)])
    return TreeAutomorphism._raw(d, top.depth + hanging[0].depth, top.root, kids)


def _rng(seed):
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_automorphism(shape: TreeShape, seed=None) -> TreeAutomorphism:
    """Uniform element of Aut(T_n(d)); ``seed`` may be an int or a ``random.Random``."""
    return _random(shape.degree, shape.depth, _rng(seed))


def _random(d, n, rng):
    if n == 0:
        return identity(d, 0)
    root = tuple(rng.sample(range(d), d))
    kids = tuple([_random(d, n - 1, rng) for _ in range(d)])
    return TreeAutomorphism._raw(d, n, root, kids)


def all_automorphisms(shape: TreeShape):
    """Every element of Aut(T_n(d)), in a fixed order (small shapes only)."""
    d, n = shape.degree, shape.depth
    if n == 0:
        return [identity(d, 0)]
    lower = all_automorphisms(TreeShape(d, n - 1))
    out = []
    for root in P.all_permutations(d):
        for kids in product(lower, repeat=d):
            out.append(TreeAutomorphism._raw(d, n, root, kids))
    return out


def to_record(a: TreeAutomorphism) -> dict:
    return {"perm": list(a.root), "children": [to_record(c) for c in a.children]}


def from_record(rec, degree: int | None = None) -> TreeAutomorphism:
    """Parse the nested ``{"perm": [...], "children": [...]}`` form.

    A depth-0 record ``{"perm": [], "children": []}`` needs ``degree``.
    """
    if not isinstance(rec, dict) or set(rec) != {"perm", "children"}:
        raise ValueError("record must have exactly the keys 'perm' and 'children'")
    root = [int(x) for x in rec["perm"]]
    kids = rec["children"]
    if not root:
        if kids:
            raise ValueError("depth-0 record cannot have children")
        if degree is None:
            raise ValueError("degree needed to read a depth-0 record")
        return identity(degree, 0)
    if degree is not None and len(root) != degree:
        raise ShapeMismatch(f"root permutation has degree {len(root)}, expected {degree}")
    d = len(root)
    parsed = [from_record(c, d) for c in kids]
    if len(parsed) != d:
        raise ShapeMismatch(f"expected {d} children, got {len(parsed)}")
    return node(root, parsed)
