"""Normal structure of materialized groups: closures, chief series, rank."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..automorphism import to_leaf_permutation
from ..errors import TooLarge
from ..overgroups import OvergroupSpec, enumerate_members, order
from ..perm import cycle_type
from .table import DEFAULT_LIMIT, FiniteGroupTable


def materialize(spec: OvergroupSpec, n: int, limit: int = DEFAULT_LIMIT) -> FiniteGroupTable:
    size = order(spec, n)
    if size > limit:
        raise TooLarge(f"{spec} at depth {n} has {size} elements (limit {limit})")
    rows = [to_leaf_permutation(a) for a in enumerate_members(spec, n, limit)]
    return FiniteGroupTable(np.array(rows))


def _as_set(mask) -> frozenset:
    return frozenset(int(x) for x in np.flatnonzero(mask))


def _as_mask(G, subgroup):
    if isinstance(subgroup, np.ndarray) and subgroup.dtype == bool:
        return subgroup
    mask = np.zeros(len(G), dtype=bool)
    mask[list(subgroup)] = True
    return mask


def normal_closure(g, G: FiniteGroupTable) -> frozenset:
    """Smallest normal subgroup containing ``g`` (an index or a list of indices)."""
    return _as_set(G.normal_closure_mask(g))


def _is_prime(k):
    return k > 1 and all(k % q for q in range(2, int(k ** 0.5) + 1))


def _minimal_over(G, base):
    """Inclusion-minimal normal subgroups properly containing the normal mask ``base``."""
    candidates = {}
    reps = G.class_representatives()
    if base.sum() == 1:
        # a minimal normal subgroup is the closure of any of its elements of prime order
        orders = G.element_orders()
        reps = [r for r in reps if _is_prime(int(orders[r]))]
    for rep in reps:
        if base[rep]:
            continue
        mask = G.normal_closure_mask([rep], base)
        candidates.setdefault(np.packbits(mask).tobytes(), mask)
    found = sorted(candidates.values(),
                   key=lambda m: (int(m.sum()), int(np.flatnonzero(m & ~base)[0])))
    minimal = []
    for mask in found:
        if not any(np.all(other <= mask) for other in minimal):
            minimal.append(mask)
    return minimal


def minimal_normal_subgroups(G: FiniteGroupTable, limit: int = DEFAULT_LIMIT) -> list:
    G.check_limit(limit)
    base = np.zeros(len(G), dtype=bool)
    base[G.identity] = True
    return [_as_set(m) for m in _minimal_over(G, base)]


@dataclass(frozen=True)
class NormalSeries:
    subgroups: tuple

    @property
    def orders(self) -> list:
        return [len(s) for s in self.subgroups]

    @property
    def factor_orders(self) -> list:
        o = self.orders
        return [b // a for a, b in zip(o, o[1:])]


def chief_series(G: FiniteGroupTable, limit: int = DEFAULT_LIMIT):
    """A chief series and whether it is the only one.

    The series is unique exactly when each quotient met along the way has a
    single minimal normal subgroup, since then every step is forced.
    """
    G.check_limit(limit)
    cur = np.zeros(len(G), dtype=bool)
    cur[G.identity] = True
    chain = [cur]
    unique = True
    while not cur.all():
        mins = _minimal_over(G, cur)
        if len(mins) != 1:
            unique = False
        cur = mins[0]
        chain.append(cur)
    return NormalSeries(tuple(_as_set(m) for m in chain)), unique


def _generators_of(G, mask):
    gens = []
    inside = np.zeros(len(G), dtype=bool)
    inside[G.identity] = True
    for x in np.flatnonzero(mask):
        if not inside[x]:
            gens.append(int(x))
            inside = G.closure_mask(gens)
    return gens


def commutator_subgroup(G: FiniteGroupTable) -> frozenset:
    return _as_set(_derived_mask(G, np.ones(len(G), dtype=bool)))


def _derived_mask(G, mask):
    # [K, K] for a normal subgroup K: normal closure of commutators of its generators
    gens = _generators_of(G, mask)
    comms = [int(G.commutator(x, y)) for x, y in combinations(gens, 2)]
    comms = [c for c in comms if c != G.identity]
    if not comms:
        out = np.zeros(len(G), dtype=bool)
        out[G.identity] = True
        return out
    return G.normal_closure_mask(comms)


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _quotient_invariants(G, top, bottom):
    """Invariant factors of the abelian quotient ``top/bottom`` of two masks.

    For each prime p the counts ``c_k = |{x : x^(p^k) in bottom}| / |bottom|``
    are the orders of the p^k-torsion of the quotient; ``log_p(c_k/c_(k-1))``
    is the number of cyclic p-factors of order at least p^k.
    """
    b = int(bottom.sum())
    size = int(top.sum()) // b
    members = np.flatnonzero(top)
    elementary = []
    for p in _prime_factors(size):
        ranks, prev, pk = [], 1, 1
        while True:
            pk *= p
            c = int(bottom[G.power(members, pk)].sum()) // b
            if c == prev:
                break
            r, ratio = 0, c // prev
            while ratio > 1:
                ratio //= p
                r += 1
            ranks.append(r)
            prev = c
        for j, r in enumerate(ranks):
            nxt = ranks[j + 1] if j + 1 < len(ranks) else 0
            elementary += [p ** (j + 1)] * (r - nxt)
    return _invariant_factors(elementary)


def _invariant_factors(elementary):
    by_prime = {}
    for q in elementary:
        p = _prime_factors(q)[0]
        by_prime.setdefault(p, []).append(q)
    for v in by_prime.values():
        v.sort(reverse=True)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for v in by_prime.values():
            if i < len(v):
                f *= v[i]
        factors.append(f)
    return sorted(factors)


def abelianization_invariants(G: FiniteGroupTable, limit: int = DEFAULT_LIMIT) -> list:
    """Invariant factors of ``G/[G, G]`` in increasing (dividing) order."""
    G.check_limit(limit)
    full = np.ones(len(G), dtype=bool)
    return _quotient_invariants(G, full, _derived_mask(G, full))


def factor_invariants(G: FiniteGroupTable, upper, lower):
    """Invariants of ``upper/lower`` when abelian, else ``None``."""
    upper, lower = _as_mask(G, upper), _as_mask(G, lower)
    gens = _generators_of(G, upper)
    for x, y in combinations(gens, 2):
        if not lower[int(G.commutator(x, y))]:
            return None
    return _quotient_invariants(G, upper, lower)


def chief_series_table(G: FiniteGroupTable, series: NormalSeries, unique: bool) -> list:
    """One row per chief factor: order, factor order, factor invariants, uniqueness."""
    rows = []
    subs = series.subgroups
    for i in range(1, len(subs)):
        inv = factor_invariants(G, subs[i], subs[i - 1])
        rows.append({"step": i, "order": len(subs[i]),
                     "factor_order": len(subs[i]) // len(subs[i - 1]),
                     "factor": "nonabelian" if inv is None else inv,
                     "unique": unique})
    return rows


def generates(G: FiniteGroupTable, gens) -> bool:
    return bool(G.closure_mask(gens).all())


def find_generating_set(G: FiniteGroupTable, k: int, trials: int = 1000, seed: int = 0,
                        sweep_limit: int = 200_000):
    """``k`` element indices generating ``G``, or ``None``.

    Seeded random draws come first.  If they fail, a deterministic sweep over
    ``k``-subsets runs with elements ordered by cycle type (longest cycles
    first); for ``k = 1`` the sweep is exhaustive via element orders.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if len(G) == 1:
        return []
    if k == 0:
        return None
    if k == 1:
        orders = G.element_orders()
        hits = np.flatnonzero(orders == len(G))
        return [int(hits[0])] if len(hits) else None
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        pick = [int(x) for x in rng.choice(len(G), size=k, replace=False)]
        if generates(G, pick):
            return pick
    ranked = sorted(range(len(G)), key=lambda i: (
        [-c for c in cycle_type(G.element(i))], i))
    for count, pick in enumerate(combinations(ranked, k)):
        if count >= sweep_limit:
            break
        if generates(G, list(pick)):
            return list(pick)
    return None


def is_cyclic(G: FiniteGroupTable) -> bool:
    return find_generating_set(G, 1) is not None


def is_unique_minimal_normal(G: FiniteGroupTable, N) -> bool:
    """Whether the normal subgroup ``N`` is the unique minimal normal subgroup.

    Two checks suffice: ``N`` is the normal closure of each of its nontrivial
    elements (minimality), and every nontrivial normal closure meets ``N``.
    For ``g`` outside ``N`` a nontrivial commutator with an element of ``N``
    already lies in both, so full closures are only built when ``g``
    centralizes ``N``.
    """
    N = _as_mask(G, N)
    if N.sum() == 1 or not G.is_normal_mask(N):
        return False
    n_gens = _generators_of(G, N)
    for rep in G.class_representatives():
        if rep == G.identity:
            continue
        if N[rep]:
            if not np.array_equal(G.normal_closure_mask([rep]), N):
                return False
            continue
        if any(int(G.commutator(rep, y)) != G.identity for y in n_gens):
            continue
        closure = G.normal_closure_mask([rep])
        closure[G.identity] = False
        if not (closure & N).any():
            return False
    return True
