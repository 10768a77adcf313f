"""Explicit elements used in the normal-subgroup arguments for the E towers."""

import random

import numpy as np

from .. import perm as P
from ..automorphism import (TreeAutomorphism, at_vertex, compose, identity, invert,
                            commutator, node, rooted, section, to_leaf_permutation)
from ..errors import NoWitness, OutOfRange
from ..overgroups import OvergroupSpec, enumerate_members, is_member
from ..tree_index import TreeShape
from .table import FiniteGroupTable


def _inverting_perm(p):
    """A permutation t with t p t^-1 = p^-1: reverse each cycle."""
    t = list(range(len(p)))
    for cyc in P.cycles(p, include_fixed=True):
        L = len(cyc)
        for r in range(L):
            t[cyc[r]] = cyc[-r % L]
    return tuple(t)


def find_inverting_conjugator(a: TreeAutomorphism) -> TreeAutomorphism:
    """Some ``t`` with ``t a t^-1 = a^-1``.

    At the top, ``t`` reverses every cycle ``(i_0 ... i_(L-1))`` of the root
    permutation.  The children of ``t`` along that cycle are then forced by one
    of them, ``s_(i_0)``, which must invert the return map
    ``g = c_(i_(L-1)) ... c_(i_0)``; that is the same problem one level down.
    """
    if a.depth == 0:
        return a
    d = a.degree
    t_root = _inverting_perm(a.root)
    if a.depth == 1:
        return rooted(t_root, 1)
    c = a.children
    s = [None] * d
    for cyc in P.cycles(a.root, include_fixed=True):
        L = len(cyc)
        g = identity(d, a.depth - 1)
        for i in cyc:
            g = compose(c[i], g)
        s[cyc[0]] = invert(find_inverting_conjugator(g))
        for r in range(L - 1):
            nxt = cyc[(r + 1) % L]
            s[nxt] = compose(compose(invert(c[cyc[(-r - 1) % L]]), s[cyc[r]]),
                             invert(c[cyc[r]]))
    return node(t_root, s)


def _bottom_element(shape, entries):
    """Element of ker(res_(n-1)) with the given local permutations at level n-1."""
    out = identity(shape.degree, shape.depth)
    for v, p in entries.items():
        out = compose(out, at_vertex(shape, shape.depth - 1, v, p))
    return out


def _bottom_action(s):
    """Action of res_(n-1)(s) on level-(n-1) vertex labels, and the sections there."""
    n = s.depth
    d = s.degree
    from ..automorphism import act_on_leaf, restrict
    top = restrict(s, n - 1)
    images = [act_on_leaf(top, v) for v in range(d ** (n - 1))]
    sections = [section(s, n - 1, v).root for v in range(d ** (n - 1))]
    return images, sections


def commutator_witness(s: TreeAutomorphism, spec: OvergroupSpec, *, budget: int = 10_000,
                       seed: int = 0) -> TreeAutomorphism:
    """A member ``c`` of ``spec`` in ker(res_(n-1)) with ``s c s^-1 c^-1 != 1``.

    Conjugating ``c`` by ``s`` moves its entry at vertex ``v`` to ``s(v)`` and
    conjugates it by the section ``s_v``.  If ``s`` moves a vertex ``v`` of level
    n-1, a single nontrivial even entry at ``v`` works.  Otherwise ``s`` is
    itself a bottom element and an entry not commuting with some ``s_v`` is
    used, paired with the same transposition at a sibling when it has to be
    odd (siblings share all ancestors, so the pair keeps every sign).  A seeded
    search over bottom elements covers the remaining small cases.
    """
    n, d = s.depth, s.degree
    if n < 2:
        raise OutOfRange("commutator witnesses need depth >= 2")
    if s.is_identity():
        raise ValueError("s must be nontrivial")
    shape = TreeShape(d, n)
    images, sections = _bottom_action(s)
    odd_perms = [p for p in P.all_permutations(d) if P.parity(p) < 0]
    even_perms = [p for p in P.all_permutations(d) if P.parity(p) > 0 and p != P.identity(d)]

    def sibling(v):
        k = d ** (n - 2)
        return (v + k) % d ** (n - 1)  # differs only in the last branch

    candidates = []
    moved = [v for v in range(len(images)) if images[v] != v]
    if moved:
        v = moved[0]
        candidates += [{v: p} for p in even_perms]
        for p in odd_perms:
            candidates.append({v: p, sibling(v): p})
    for v, sv in enumerate(sections):
        if sv == P.identity(d):
            continue
        for p in even_perms:
            if P.compose(sv, p) != P.compose(p, sv):
                candidates.append({v: p})
        for p in odd_perms:
            if P.compose(sv, p) != P.compose(p, sv):
                candidates.append({v: p, sibling(v): p})
                candidates.append({v: p, sibling(v): odd_perms[0]})
    for entries in candidates:
        c = _bottom_element(shape, entries)
        if is_member(c, spec) and not commutator(s, c).is_identity():
            return c
    rng = random.Random(seed)
    allp = P.all_permutations(d)
    for _ in range(budget):
        entries = {v: rng.choice(allp) for v in range(d ** (n - 1))}
        c = _bottom_element(shape, entries)
        if is_member(c, spec) and not commutator(s, c).is_identity():
            return c
    raise NoWitness("no commuting-breaking bottom element found")


def partial_inversion_witness(b: TreeAutomorphism, members=None):
    """For ``b = ((a_1, ..., a_d); 1)`` in E_2^2(d), find ``s`` in E_2^2(d) with
    ``s b s^-1`` equal to ``((a_1, a_2^-1, ..., a_d^-1); 1)`` or
    ``((a_1, a_2, a_3^-1, ..., a_d^-1); 1)``.

    Returns ``(s, form)`` with ``form`` 1 or 2, searching the given member list
    (all of E_2^2(d) by default).
    """
    d = b.degree
    if b.depth != 2 or b.root != P.identity(d):
        raise ValueError("b must have depth 2 and trivial root")
    spec = OvergroupSpec("E", d, 2)
    if not is_member(b, spec):
        raise ValueError("b is not in E_2^2")
    a = [c.root for c in b.children]
    lo = identity(d, 0)
    form1 = [a[0]] + [P.inverse(x) for x in a[1:]]
    form2 = [a[0], a[1]] + [P.inverse(x) for x in a[2:]]
    goals = {}
    for k, entries in ((1, form1), (2, form2)):
        target = node(P.identity(d), [node(x, [lo] * d) for x in entries])
        goals.setdefault(target, k)
    if members is None:
        members = enumerate_members(spec, 2)
    inv_cache = {}
    for s in members:
        si = inv_cache.get(s)
        if si is None:
            si = invert(s)
        conj = compose(compose(s, b), si)
        if conj in goals:
            return s, goals[conj]
    raise NoWitness("no partial inversion found")


def sign_extension_group(d: int, n: int, i: int = 1, limit: int = 10 ** 6):
    """``<X_i> x| Aut(T_n(d))`` as permutations of leaf-sign pairs.

    ``X_i`` is the set of Aut(T_n(d))-conjugates of ``e_u + e_w`` for two leaves
    ``u, w`` whose paths first differ at level ``n - i + 1``; for ``i = 1``
    they are siblings, for ``i = n`` they split at the root.  Point
    ``j + d**n * b`` is leaf ``j`` carrying sign ``(-1)**b``.  Returns the
    table and the mask of its elements acting trivially on leaves.
    """
    if not 1 <= i <= n:
        raise OutOfRange(f"i must lie in 1..{n}")
    shape = TreeShape(d, n)
    N = d ** n
    gens = []
    cyc = P.from_cycles(d, tuple(range(d)))
    swap = P.from_cycles(d, (0, 1))
    for level in range(n):
        for v in range(d ** level):
            for p in (cyc, swap):
                leafp = to_leaf_permutation(at_vertex(shape, level, v, p))
                gens.append(list(leafp) + [x + N for x in leafp])
    flip = list(range(2 * N))
    for j in (0, d ** (n - i)):
        flip[j], flip[j + N] = j + N, j
    gens.append(flip)
    G = FiniteGroupTable.from_generators(gens, limit)
    el = G.elements.astype(np.int64)
    sign_part = np.all(el[:, :N] % N == np.arange(N)[None, :], axis=1)
    return G, sign_part


def _flips(G, N):
    el = G.elements.astype(np.int64)
    pure = np.all(el[:, :N] % N == np.arange(N)[None, :], axis=1)
    return pure, el[:, :N] >= N


def even_weight_mask(G: FiniteGroupTable, N: int):
    """Pure sign elements with an even number of flips overall."""
    pure, flips = _flips(G, N)
    return pure & (flips.sum(axis=1) % 2 == 0)


def block_even_mask(G: FiniteGroupTable, d: int, n: int):
    """Pure sign elements with an even number of flips in every sibling block."""
    pure, flips = _flips(G, d ** n)
    step = d ** (n - 1)
    ok = pure.copy()
    for v in range(step):
        ok &= flips[:, v::step].sum(axis=1) % 2 == 0
    return ok
