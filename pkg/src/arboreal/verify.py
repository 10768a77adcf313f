"""The acceptance checks, grouped into suites.

Each check returns a :class:`Outcome` whose ``lines`` are human-readable
``...: PASS`` / ``...: FAIL`` statements.  Timings are kept apart from the lines
so that reports are reproducible byte for byte.
"""

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import perm as P
from .automorphism import all_automorphisms, random_automorphism, to_leaf_permutation
from .dynamics import (RationalPolynomial, classify_overgroup, detect_pcf, discriminant,
                       discriminant_by_resultant, format_factored, iterate)
from .errors import UncoveredCase
from .group_structure import (abelianization_invariants, chief_series, find_generating_set,
                              is_cyclic, materialize, normalize_tuple, replay)
from .overgroups import OvergroupSpec, enumerate_members, is_member, order, random_member
from .padic import condition_check, iterate_irreducibility_certificate, newton_polygon
from .signs import sgn, sgn1_mm, sgn2_mm, sgn_m
from .tree_index import TreeShape

F_STAR = RationalPolynomial.parse("1,0,-3,2")


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


@dataclass
class Outcome:
    key: str
    title: str
    lines: list = field(default_factory=list)
    passed: bool = True
    seconds: float = 0.0

    def check(self, ok: bool, text: str) -> bool:
        ok = bool(ok)
        self.lines.append(f"{text}: {_mark(ok)}")
        self.passed &= ok
        return ok

    @property
    def headline(self) -> str:
        return f"{self.key} {self.title}: {_mark(self.passed)}"


def _start(key, title):
    return Outcome(key, title), time.perf_counter()


def _done(out, t0):
    out.seconds = time.perf_counter() - t0
    return out


def c1a_order_by_filtering():
    out, t0 = _start("C1a", "E_2^2(3) by filtering Aut(T_2(3))")
    spec = OvergroupSpec("E", 3, 2)
    elements = all_automorphisms(TreeShape(3, 2))
    kept = sum(1 for a in elements if is_member(a, spec))
    out.check(len(elements) == 1296, f"|Aut(T_2(3))| enumerated {len(elements)} == 1296")
    out.check(kept == 648 == order(spec, 2),
              f"E_2^2(3): enumerated {kept} == formula {order(spec, 2)}")
    elapsed = time.perf_counter() - t0
    out.check(elapsed < 5, "runtime under 5 s")
    return _done(out, t0)


def c1b_order_f_family():
    out, t0 = _start("C1b", "F_2^(2,1)(2) by filtering Aut(T_2(2))")
    spec = OvergroupSpec("F", 2, 2, 1)
    elements = all_automorphisms(TreeShape(2, 2))
    kept = sum(1 for a in elements if is_member(a, spec))
    out.check(len(elements) == 16, f"|Aut(T_2(2))| enumerated {len(elements)} == 16")
    out.check(kept == 8, f"F_2^(2,1)(2): enumerated {kept} == 8")
    return _done(out, t0)


def c2_order_recursion(limit: int = 40_000):
    out, t0 = _start("C2", "order recursion |E_(n+1)| = |E_n|^d d!/2")
    for d in (2, 3):
        for m in (1, 2, 3):
            spec = OvergroupSpec("E", d, m)
            counts = {}
            for n in range(0, 6):
                if order(spec, n) > limit:
                    break
                counts[n] = len(enumerate_members(spec, n, limit))
            for n, c in counts.items():
                out.check(c == order(spec, n),
                          f"E_{n}^{m}({d}): enumerated {c} == formula {order(spec, n)}")
                if n + 1 in counts and n + 1 >= m:
                    rec = c ** d * math.factorial(d) // 2
                    out.check(counts[n + 1] == rec,
                              f"E_{n + 1}^{m}({d}): enumerated {counts[n + 1]} == recursion {rec}")
    spec = OvergroupSpec("E", 3, 2)
    size = order(spec, 1)
    for n in range(1, 3):
        size = size ** 3 * 6 // 2
    out.check(order(spec, 3) == size == 816293376,
              f"order(E:d=3,m=2, n=3) = {order(spec, 3)} == recursion {size} == 816293376")
    return _done(out, t0)


_PAIRS = ((2, 1), (3, 1), (3, 2))


def _sign_samples(d, n, count, seed):
    import random
    rng = random.Random(seed)
    return [random_automorphism(TreeShape(d, n), rng) for _ in range(count)]


def c3_sign_identities_odd(count: int = 10_000, seed: int = 0):
    out, t0 = _start("C3-odd", "odd d: sgn1 = sgn2 = sgn_m sgn_m'")
    elements = _sign_samples(3, 4, count, seed)
    for m, mp in _PAIRS:
        bad = sum(1 for a in elements
                  if not sgn1_mm(a, m, mp) == sgn2_mm(a, m, mp) == sgn_m(a, m) * sgn_m(a, mp))
        out.check(bad == 0, f"(d,n)=(3,4) (m,m')=({m},{mp}): {bad} violations in {count}")
    return _done(out, t0)


def c3_sign_identities_even(count: int = 10_000, seed: int = 0):
    out, t0 = _start("C3-even", "even d: sgn1 = sgn_m sgn_m', sgn2 = sgn_m")
    elements = _sign_samples(2, 4, count, seed)
    for m, mp in _PAIRS:
        bad = sum(1 for a in elements
                  if sgn1_mm(a, m, mp) != sgn_m(a, m) * sgn_m(a, mp) or sgn2_mm(a, m, mp) != sgn_m(a, m))
        out.check(bad == 0, f"(d,n)=(2,4) (m,m')=({m},{mp}): {bad} violations in {count}")
    return _done(out, t0)


def _expanded_sign(a):
    return P.parity(to_leaf_permutation(a))


def _best_time(fn, items, repeats=5):
    best = math.inf
    for _ in range(repeats):
        t = time.perf_counter()
        for x in items:
            fn(x)
        best = min(best, time.perf_counter() - t)
    return best


def c4_recursive_sign(count: int = 1000, seed: int = 0):
    out, t0 = _start("C4", "recursive sign equals leaf parity")
    exhaustive = all_automorphisms(TreeShape(3, 2))
    bad = sum(1 for a in exhaustive if sgn(a) != _expanded_sign(a))
    out.check(bad == 0, f"(3,2) exhaustive: {bad} mismatches in {len(exhaustive)}")
    sample35 = _sign_samples(3, 5, count, seed)
    for d, n, elements in ((3, 5, sample35), (2, 6, _sign_samples(2, 6, count, seed))):
        bad = sum(1 for a in elements if sgn(a) != _expanded_sign(a))
        out.check(bad == 0, f"({d},{n}) random: {bad} mismatches in {count}")
    fast = _best_time(sgn, sample35)
    slow = _best_time(_expanded_sign, sample35)
    ratio = slow / fast
    out.check(ratio >= 10, f"(3,5) speedup over expansion {ratio:.1f}x >= 10x")
    return _done(out, t0)


def _m2_elements():
    # ((a_1, a_2, a_3); 1) with every a_i in A_3, as leaf permutations
    a3 = [p for p in P.all_permutations(3) if P.parity(p) == 1]
    out = set()
    for kids in product(a3, repeat=3):
        out.add(tuple(k % 3 + 3 * kids[k % 3][k // 3] for k in range(9)))
    return out


def c5_chief_series():
    out, t0 = _start("C5", "chief series of E_2^2(3)")
    G = materialize(OvergroupSpec("E", 3, 2), 2)
    series, unique = chief_series(G)
    orders = series.orders
    out.check(orders == [1, 27, 108, 324, 648] and unique,
              f"chief series {format_list(orders)} unique")
    second = {G.element(i) for i in sorted(series.subgroups[1])}
    out.check(second == _m2_elements(), "second term equals M_2")
    elapsed = time.perf_counter() - t0
    out.check(elapsed < 300, "runtime under 5 min")
    return _done(out, t0)


def format_list(xs) -> str:
    return "[" + ",".join(str(x) for x in xs) + "]"


def c6_rank():
    out, t0 = _start("C6", "rank of E_2^2(3) is 2")
    G = materialize(OvergroupSpec("E", 3, 2), 2)
    gens = find_generating_set(G, 2, trials=1000, seed=0)
    out.check(gens is not None, "2-element generating set found within 1000 trials")
    out.check(not is_cyclic(G), "E_2^2(3) is not cyclic")
    return _done(out, t0)


def c7_abelianization():
    out, t0 = _start("C7", "abelianization of Aut(T_2(d))")
    for d in (3, 2):
        inv = abelianization_invariants(materialize(OvergroupSpec("Aut", d), 2))
        out.check(inv == [2, 2], f"Aut(T_2({d}))^ab invariants {format_list(inv)} == [2,2]")
    return _done(out, t0)


def c8_algorithm_one():
    out, t0 = _start("C8", "sign tuple normalization")
    for d in (3, 5, 7):
        target = (-1, -1) + (1,) * (d - 2)
        total = bad = 0
        longest = 0
        for t in product((1, -1), repeat=d):
            if math.prod(t) != 1 or all(x == 1 for x in t):
                continue
            total += 1
            result, moves = normalize_tuple(t)
            longest = max(longest, len(moves))
            if result != target or replay(t, moves) != result or len(moves) > d * 2 ** d:
                bad += 1
        out.check(bad == 0, f"d={d}: {total} tuples normalized and replayed, max {longest} moves "
                            f"<= {d * 2 ** d}")
    return _done(out, t0)


def c9_discriminants():
    out, t0 = _start("C9", "discriminant recursion against resultant")
    f = F_STAR
    for alpha in (Fraction(-1), Fraction(3), Fraction(1, 2)):
        for n in (1, 2):
            rec = discriminant(f, alpha, n).value
            ora = discriminant_by_resultant(iterate(f, n) - alpha)
            out.check(rec == ora, f"alpha={alpha} n={n}: recursion {format_factored(rec)} == "
                                  f"resultant {format_factored(ora)}")
    out.check(discriminant(f, -1, 1).value == -216, "disc(f+1) = -216")
    out.check(discriminant(f, 3, 1).value == -648, "disc(f-3) = -648")
    rep = discriminant(f, 3, 2)
    out.check(rep.value == 2 ** 36 * 3 ** 22 and rep.is_square,
              f"disc(f²−3) = {format_factored(rep.value)} square")
    return _done(out, t0)


EVEN_L1_PROBE = RationalPolynomial.parse("0,0,-2,0,1")
ODD_TAIL_PROBE = RationalPolynomial.parse("-1/2,0,9/2,-3")


def c10_classification():
    out, t0 = _start("C10", "PCF classification")
    orbit = detect_pcf(F_STAR)
    spec, _ = classify_overgroup(F_STAR, None, orbit)
    out.check((orbit.L, orbit.O) == (0, 1) and spec == OvergroupSpec("E", 3, 2),
              f"2z^3-3z^2+1: (L,O)=({orbit.L},{orbit.O}) -> {spec}")
    for text, want in (("0,0,1", OvergroupSpec("E", 2, 2, 1)), ("-2,0,1", OvergroupSpec("E", 2, 3, 2))):
        g = RationalPolynomial.parse(text)
        spec, _ = classify_overgroup(g)
        out.check(spec == want, f"{g}: {spec} == {want}")
    try:
        classify_overgroup(EVEN_L1_PROBE)
        fired = False
    except UncoveredCase as e:
        fired = any(f.get("flag") == "even-L1-uncovered" for f in e.flags)
    o = detect_pcf(EVEN_L1_PROBE)
    out.check(fired and o.L == 1, f"{EVEN_L1_PROBE} (L={o.L}): uncovered-case flag")
    o = detect_pcf(ODD_TAIL_PROBE)
    spec, flags = classify_overgroup(ODD_TAIL_PROBE, None, o)
    out.check(o.L > 1 and any(f.get("flag") == "F-vs-E" for f in flags),
              f"{ODD_TAIL_PROBE} (L={o.L}): F-vs-E flag on {spec}")
    return _done(out, t0)


def c11_necessary_conditions():
    out, t0 = _start("C11", "necessary conditions for alpha = 3")
    ok, witness = condition_check(3)
    out.check(ok, f"condition at alpha=3 {witness}")
    for n in (1, 2, 3):
        cert = iterate_irreducibility_certificate(F_STAR, 3, n)
        out.check(cert is not None, f"f^{n}-3 (degree {3 ** n}) Eisenstein certificate "
                                    f"{cert.to_record() if cert else None}")
    r1 = discriminant(F_STAR, 3, 1)
    out.check(not r1.is_square, f"disc(f−3) = {format_factored(r1.value)} non-square")
    r2 = discriminant(F_STAR, 3, 2)
    out.check(r2.is_square, f"disc(f²−3) = {format_factored(r2.value)} square")
    elapsed = time.perf_counter() - t0
    out.check(elapsed < 30, "runtime under 30 s")
    return _done(out, t0)


def c12_newton_polygon():
    out, t0 = _start("C12", "Newton polygon of f-3 at 2")
    poly = newton_polygon(F_STAR - 3, 2)
    want = ((Fraction(-1, 2), 2), (Fraction(1), 1))
    shown = ", ".join(f"({s}, {n})" for s, n in poly.segments)
    out.check(poly.segments == want, f"segments [{shown}] == [(-1/2, 2), (1, 1)]")
    return _done(out, t0)


def c13_sampling(count: int = 10_000, uniform: int = 64_800, seed: int = 0):
    out, t0 = _start("C13", "sampling coherence")
    import random
    rng = random.Random(seed)
    spec = OvergroupSpec("E", 3, 2)
    bad = sum(1 for _ in range(count) if not is_member(random_member(spec, 4, rng), spec))
    out.check(bad == 0, f"E_4^2(3): {bad} non-members in {count} samples")
    counts = Counter(random_member(spec, 2, rng) for _ in range(uniform))
    size = order(spec, 2)
    expected = uniform / size
    sigma = math.sqrt(expected * (1 - 1 / size))
    worst = max(abs(counts.get(a, 0) - expected) for a in enumerate_members(spec, 2))
    out.check(len(counts) == size and worst <= 4 * sigma,
              f"E_2^2(3): {len(counts)} of {size} elements hit, max deviation "
              f"{worst / sigma:.2f} sigma <= 4")
    return _done(out, t0)


CRITERIA = {
    "C1a": c1a_order_by_filtering,
    "C1b": c1b_order_f_family,
    "C2": c2_order_recursion,
    "C3-odd": c3_sign_identities_odd,
    "C3-even": c3_sign_identities_even,
    "C4": c4_recursive_sign,
    "C5": c5_chief_series,
    "C6": c6_rank,
    "C7": c7_abelianization,
    "C8": c8_algorithm_one,
    "C9": c9_discriminants,
    "C10": c10_classification,
    "C11": c11_necessary_conditions,
    "C12": c12_newton_polygon,
    "C13": c13_sampling,
}

SUITES = {
    "signs": ("C3-odd", "C3-even", "C4"),
    "orders": ("C1a", "C1b", "C2", "C13"),
    "structure": ("C5", "C6", "C7", "C8"),
    "dynamics": ("C9", "C10"),
    "padic": ("C11", "C12"),
}
SUITES["all"] = tuple(CRITERIA)


def run_suite(name: str):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [CRITERIA[key]() for key in SUITES[name]]
