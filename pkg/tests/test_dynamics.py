import random
from fractions import Fraction as Fr

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, strategies as st

from arboreal.dynamics import (A, B, RationalPolynomial, check_square_level, classify_overgroup,
                               critical_points, detect_pcf, disc_square_level, discriminant,
                               discriminant_by_resultant, discriminant_values, factor_integer,
                               format_factored, is_rational_square, iterate, kronecker_like_symbol,
                               potential_nonsquare, rational_roots, resultant)
from arboreal.errors import DegreeOverflow, IrrationalCritical, NotPCF, UncoveredCase
from arboreal.overgroups import OvergroupSpec

R = RationalPolynomial.parse
F = R("1,0,-3,2")
Z = sympy.Symbol("z")


def to_sympy(p):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], Z)


def polys(max_degree=4):
    coeff = st.fractions(min_value=-6, max_value=6, max_denominator=4)
    return st.lists(coeff, min_size=2, max_size=max_degree + 1).filter(
        lambda cs: cs[-1] != 0).map(RationalPolynomial)


def test_parse_and_print():
    assert str(F) == "2*z^3 - 3*z^2 + 1"
    assert R(F.to_text()) == F
    assert R("1/2, 0, -3/4") == RationalPolynomial([Fr(1, 2), 0, Fr(-3, 4)])
    for bad in ("", "1,x", "1,,2"):
        with pytest.raises(ValueError):
            R(bad)


@given(polys(3), polys(3), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_ring_operations(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)
    assert p.compose(q)(x) == p(q(x))
    quo, rem = divmod(p, q)
    assert quo * q + rem == p and rem.degree < q.degree
    assert p.shift(x)(Fr(1)) == p(1 + x)


def test_iterate():
    assert iterate(F, 1) == F
    assert iterate(R("0,0,1"), 3) == R("0,0,0,0,0,0,0,0,1")
    f2 = iterate(F, 2)
    assert f2.degree == 9 and f2.coeffs[0] == 0
    assert iterate(F, 0) == RationalPolynomial.z()
    assert iterate(F, 3) == iterate(F, 1).compose(iterate(F, 2))
    with pytest.raises(DegreeOverflow):
        iterate(F, 6)
    with pytest.raises(DegreeOverflow):
        iterate(F, 3, max_degree=9)


def test_critical_points():
    assert critical_points(F) == (0, 1)
    assert critical_points(R("0,0,0,0,1")) == (0, 0, 0)
    assert critical_points(R("1,-3,0,1")) == (-1, 1)
    with pytest.raises(IrrationalCritical):
        critical_points(R("0,-2,0,1"))


@given(polys(6))
def test_rational_roots_against_sympy(p):
    roots = rational_roots(p)
    want = sorted(r for r, k in sympy.roots(to_sympy(p), filter="Q").items() for _ in range(k))
    assert [sympy.Rational(r.numerator, r.denominator) for r in roots] == want


def test_detect_pcf_examples():
    o = detect_pcf(F)
    assert (o.L, o.O) == (0, 1)
    o = detect_pcf(R("0,0,1"))
    assert (o.L, o.O) == (0, 1)
    o = detect_pcf(R("-2,0,1"))
    assert (o.L, o.O) == (2, 1) and o.orbit_multisets == ((0,), (-2,), (2,), (2,))
    with pytest.raises(NotPCF):
        detect_pcf(R("1,0,1"), max_steps=10)
    with pytest.raises(IrrationalCritical):
        detect_pcf(R("0,-2,0,1"))


@pytest.mark.parametrize("text", ["1,0,-3,2", "0,0,1", "-2,0,1", "-1,0,1", "0,0,-2,0,1",
                                  "-1/2,0,9/2,-3", "-9/4,0,1,-4/27", "0,0,0,1"])
def test_orbit_minimality(text):
    f = R(text)
    o = detect_pcf(f)
    ms = o.orbit_multisets
    assert ms[o.L + o.O] == ms[o.L]
    for L in range(o.L + 1):
        for O in range(1, o.O + (L < o.L)):
            if (L, O) != (o.L, o.O) and L + O < len(ms):
                assert ms[L + O] != ms[L]
    assert len(set(ms[:-1])) == len(ms) - 1


def test_resultant():
    assert resultant(R("-1,1"), R("-2,1")) == -1
    assert resultant(R("-2,1"), R("-1,1")) == 1
    assert resultant(R("1,2,3"), RationalPolynomial.constant(5)) == 25
    assert discriminant_by_resultant(R("2,0,-3,2")) == -216


@given(polys(4), polys(4))
def test_resultant_against_sylvester_determinant(p, q):
    # sympy.resultant itself disagrees with the determinant on e.g. (z + 1, z^3)
    if p.degree >= 1 and q.degree >= 1:
        P, Q = to_sympy(p).as_expr(), to_sympy(q).as_expr()
        assert resultant(p, q) == sylvester(P, Q, Z).det()


def test_resultant_from_roots():
    # lead(p)^deg(q) * prod q(r) over the roots r of p
    p, q = R("-2,-1,1"), R("1,0,0,1")
    assert resultant(p, q) == q(2) * q(-1)
    assert resultant(R("1,1"), R("0,0,0,1")) == -1


@given(polys(5))
def test_discriminant_oracle_against_sympy(p):
    if p.degree >= 1:
        assert discriminant_by_resultant(p) == sympy.discriminant(to_sympy(p))


def test_sign_symbol():
    assert [kronecker_like_symbol(d) for d in (3, 4, 5)] == [-1, 1, 1]
    for d in range(2, 13):
        for n in range(1, 7):
            assert (-1) ** A(d, n) == kronecker_like_symbol(d)
    assert B(3, 2) == 26


def test_discriminant_pins():
    assert discriminant(F, -1, 1).value == -216
    r = discriminant(F, 3, 1)
    assert r.value == -648 and not r.is_square
    r = discriminant(F, 3, 2)
    assert r.value == 2 ** 36 * 3 ** 22 and r.is_square
    assert format_factored(r.value) == "2^36·3^22"


@pytest.mark.parametrize("alpha", [Fr(-1), Fr(3), Fr(1, 2), Fr(5, 3)])
@pytest.mark.parametrize("n", [1, 2])
def test_recursion_against_oracle(alpha, n):
    assert discriminant(F, alpha, n).value == discriminant_by_resultant(iterate(F, n) - alpha)


def test_recursion_against_sympy_degree_27():
    g = iterate(F, 3) - 3
    assert discriminant(F, 3, 3).value == sympy.discriminant(to_sympy(g))


def test_recursion_random_polynomials():
    rng = random.Random(8)
    for d in (2, 3, 4, 5, 6):
        for _ in range(10):
            f = RationalPolynomial([Fr(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d)]
                                   + [Fr(rng.choice([1, -2, 3]))])
            alpha = Fr(rng.randint(-4, 4), rng.randint(1, 3))
            for n, v in enumerate(discriminant_values(f, alpha, 2 if d ** 2 <= 25 else 1), 1):
                assert v == discriminant_by_resultant(iterate(f, n) - alpha)


def test_pnf_soundness():
    rng = random.Random(9)
    for d in (2, 3, 4, 5):
        for _ in range(10):
            f = RationalPolynomial([Fr(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(d)]
                                   + [Fr(rng.choice([1, -1, 2]))])
            alpha = Fr(rng.randint(-4, 4))
            for n in (1, 2):
                if d ** n > 25:
                    continue
                rep = discriminant(f, alpha, n)
                if rep.value == 0:
                    continue
                assert rep.value == rep.square_part ** 2 * rep.potential_nonsquare
                assert rep.is_square == is_rational_square(rep.potential_nonsquare)


def test_pnf_sign_for_degree_two():
    # the even-degree sign (-1)^(d(d-1)/2) is needed at n = 1 when d = 2 mod 4
    f = R("0,0,1")
    rep = discriminant(f, 2, 1)
    assert rep.value == 8 and rep.potential_nonsquare == 2
    assert rep.square_part ** 2 * rep.potential_nonsquare == rep.value


def test_square_levels():
    o = detect_pcf(F)
    assert disc_square_level(F, 3, o) == (2, 0)
    assert check_square_level(F, 3, o) == (True, 1)
    assert disc_square_level(R("-2,0,1")) == (3, 2)
    assert disc_square_level(R("0,0,1")) == (2, 1)
    assert check_square_level(R("-2,0,1"), 5) == (True, 1)
    assert disc_square_level(R("-1/2,0,9/2,-3")) == (3, 1)
    assert check_square_level(R("-1/2,0,9/2,-3"), 7)[0]


def test_degree_two_level_one_residual_sign():
    # disc(z^4 - 2) = -2048 has a leftover -1 relative to the level-1 field
    ok, residual = check_square_level(R("0,0,1"), 2)
    assert residual == -1 and not ok
    assert discriminant(R("0,0,1"), 2, 2).value == -2048


def test_classifier():
    assert classify_overgroup(F) == (OvergroupSpec("E", 3, 2), [])
    spec, flags = classify_overgroup(R("0,0,1"))
    assert spec == OvergroupSpec("E", 2, 2, 1) and flags == [{"flag": "minus-one"}]
    assert classify_overgroup(R("-2,0,1")) == (OvergroupSpec("E", 2, 3, 2), [])
    assert classify_overgroup(R("0,0,0,0,1"))[0] == OvergroupSpec("E", 4, 2, 1)
    assert classify_overgroup(R("0,0,0,1"))[0] == OvergroupSpec("E", 3, 2)
    spec, flags = classify_overgroup(R("-1/2,0,9/2,-3"))
    assert spec == OvergroupSpec("F", 3, 3, 1)
    assert flags[0]["flag"] == "F-vs-E" and flags[0]["alternative"]["m"] == 5
    with pytest.raises(UncoveredCase) as err:
        classify_overgroup(R("0,0,-2,0,1"))
    assert err.value.candidate == {"family": "E", "d": 4, "m": 2, "mp": 1}
    assert err.value.record()["flags"] == [{"flag": "even-L1-uncovered"}]


def test_factoring():
    assert factor_integer(2 ** 36 * 3 ** 22) == [(2, 36), (3, 22)]
    assert factor_integer(1_000_003 * 1_000_033) is None
    assert format_factored(-648) == "-2^3·3^4"
    assert format_factored(Fr(-3, 8)) == "-3/2^3"
    assert format_factored(1_000_003 * 1_000_033) == str(1_000_003 * 1_000_033)
