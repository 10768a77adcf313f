"""Sign characters of Aut(T_n(d)).

All signs are evaluated by walking the tree, never by expanding the leaf
permutation.  The top permutation of a depth-k subtree acts on the ``d**k``
leaves below it as ``d**(k-1)`` parallel copies, so its parity enters the
leaf sign with exponent ``d**(k-1)``: always for odd ``d``, and for even ``d``
only at the bottom level.
"""

from operator import attrgetter

from .automorphism import TreeAutomorphism
from .errors import OutOfRange
from .perm import all_permutations, parity

_root = attrgetter("root")
_ODD = {}


def _odd_lookup(d):
    get = _ODD.get(d)
    if get is None:
        table = {p: (1 if parity(p) < 0 else 0) for p in all_permutations(d)}
        get = _ODD[d] = table.__getitem__
    return get


def _odd_vertices(a, m, every_level, get):
    # number of odd local permutations counted by sgn(res_m a); the depth-2
    # case is unrolled since it holds most of the vertices
    if m == 1:
        return get(a.root)
    if m == 2:
        s = sum(map(get, map(_root, a.children)))
    else:
        s = sum([_odd_vertices(c, m - 1, every_level, get) for c in a.children])
    return s + get(a.root) if every_level else s


def _truncated_sign(a: TreeAutomorphism, m: int) -> int:
    if m == 0 or a.depth == 0:
        return 1
    odd = _odd_vertices(a, m, a.degree % 2 == 1, _odd_lookup(a.degree))
    return -1 if odd & 1 else 1


def _leaf_sign(a: TreeAutomorphism) -> int:
    return _truncated_sign(a, a.depth)


def sgn(a: TreeAutomorphism) -> int:
    """Parity of the permutation ``a`` induces on the leaves."""
    return _leaf_sign(a)


def sgn_m(a: TreeAutomorphism, m: int) -> int:
    """``sgn(restrict(a, m))``."""
    if not 0 <= m <= a.depth:
        raise OutOfRange(f"level {m} outside 0..{a.depth}")
    return _truncated_sign(a, m)


def _upper(a, m, levels):
    # product of the signs of the depth-`levels` parts hanging at level m
    if m == 0:
        return _truncated_sign(a, levels)
    s = 1
    for c in a.children:
        s *= _upper(c, m - 1, levels)
    return s


def sgn_upper(a: TreeAutomorphism, m: int) -> int:
    """Product of ``sgn`` over the ``d**m`` sections hanging at level ``m``.

    Defined for ``0 <= m <= depth``; ``m = 0`` gives ``sgn(a)`` and
    ``m = depth`` gives +1 (every section has depth 0).
    """
    if not 0 <= m <= a.depth:
        raise OutOfRange(f"level {m} outside 0..{a.depth}")
    return _upper(a, m, a.depth - m)


def _check_pair(a, m, mp):
    if not a.depth >= m > mp > 0:
        raise OutOfRange(f"need depth >= m > m' > 0, got depth={a.depth}, m={m}, m'={mp}")


def sgn2_mm(a: TreeAutomorphism, m: int, mp: int) -> int:
    """``sgn_upper(restrict(a, m), mp)``."""
    _check_pair(a, m, mp)
    return _upper(a, mp, m - mp)


def sgn1_mm(a: TreeAutomorphism, m: int, mp: int) -> int:
    """``sgn_upper(restrict(a, m), mp) * sgn_m(a, mp)``."""
    _check_pair(a, m, mp)
    return _upper(a, mp, m - mp) * _truncated_sign(a, mp)


def parse_variant(text: str):
    """Turn ``sgn``, ``m:2``, ``upper:1``, ``sgn1:3,1`` or ``sgn2:3,1`` into a callable."""
    name, _, args = text.partition(":")
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"bad sign variant {text!r}") from None
    table = {"sgn": (sgn, 0), "m": (sgn_m, 1), "upper": (sgn_upper, 1),
             "sgn1": (sgn1_mm, 2), "sgn2": (sgn2_mm, 2)}
    if name not in table or len(nums) != table[name][1]:
        raise ValueError(f"bad sign variant {text!r}")
    fn = table[name][0]
    return lambda a: fn(a, *nums)
