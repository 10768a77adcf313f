"""Permutations of ``{0, ..., k-1}`` stored as tuples of images.

Composition follows function notation: ``compose(p, q)[i] == p[q[i]]``, so
``q`` acts first.
"""

from functools import lru_cache
from itertools import permutations as _itertools_permutations

Permutation = tuple


def identity(k: int) -> Permutation:
    return tuple(range(k))


def is_permutation(p) -> bool:
    return sorted(p) == list(range(len(p)))


def check(p) -> Permutation:
    p = tuple(int(x) for x in p)
    if not is_permutation(p):
        raise ValueError(f"not a permutation: {list(p)}")
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    return tuple(p[i] for i in q)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycles(p: Permutation, *, include_fixed=False) -> list:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        if include_fixed or len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> tuple:
    return tuple(sorted((len(c) for c in cycles(p, include_fixed=True)), reverse=True))


def parity(p: Permutation) -> int:
    """Return +1 for even and -1 for odd permutations (cycle count method)."""
    n_cycles = len(cycles(p, include_fixed=True))
    return -1 if (len(p) - n_cycles) % 2 else 1


@lru_cache(maxsize=None)
def small_parity(p: Permutation) -> int:
    # memoised for the short root permutations of tree vertices
    return parity(p)


def from_cycles(k: int, *cyc) -> Permutation:
    img = list(range(k))
    for c in cyc:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return check(img)


@lru_cache(maxsize=None)
def all_permutations(k: int) -> tuple:
    return tuple(_itertools_permutations(range(k)))


def format_cycles(p: Permutation) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)
