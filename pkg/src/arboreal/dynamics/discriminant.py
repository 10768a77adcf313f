"""Discriminants of ``f^n - alpha`` through the critical orbit.

Write ``P_k = prod_{c in C_f} (f^k(c) - alpha)`` (critical points with
multiplicity) and ``a`` for the leading coefficient of ``f``.  Then

    disc(f - alpha)   = (-1)^(d(d-1)/2) d^d a^(d-1) P_1
    disc(f^n - alpha) = (-1)^A(d,n) a^B(d,n) d^(d^n) disc(f^(n-1) - alpha)^d P_n

with ``A(d,n) = d^n((d^n-1)/2 + (d^(n-1)-1)/2)`` and ``B(d,n) = d^(2n-1) - 1``.
``P_k`` is evaluated as a resultant against ``f'`` after reducing ``f^k``
modulo ``f'``, so critical points need not be rational.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DegreeOverflow, OutOfRange
from .polynomial import (MAX_DEGREE, RationalPolynomial, is_rational_square,
                         rational_sqrt, resultant)


def A(d: int, n: int) -> int:
    return d ** n * ((d ** n - 1) // 2 + (d ** (n - 1) - 1) // 2)


def B(d: int, n: int) -> int:
    return d ** (2 * n - 1) - 1


def kronecker_like_symbol(d: int) -> int:
    """+1 for even ``d`` or ``d = 1 mod 4``, -1 for ``d = 3 mod 4``."""
    if d < 2:
        raise OutOfRange("d must be >= 2")
    return -1 if d % 4 == 3 else 1


def _base_sign(d: int) -> int:
    return -1 if (d * (d - 1) // 2) % 2 else 1


def critical_products(f: RationalPolynomial, alpha, n: int) -> list:
    """``[P_1, ..., P_n]``.

    ``f^k(c)`` agrees with ``r_k(c)`` where ``r_k = f(r_(k-1)) mod f'``, and
    ``prod_c h(c) = Res(f', h) / lead(f')**deg(h)``.
    """
    alpha = Fraction(alpha)
    df = f.derivative()
    out = []
    r = RationalPolynomial.z()
    for _ in range(n):
        r = f.compose(r) % df
        h = r - alpha
        if h.is_zero():
            out.append(Fraction(0))
        else:
            out.append(resultant(df, h) / df.leading ** h.degree)
    return out


@dataclass(frozen=True)
class DiscriminantReport:
    value: Fraction
    square_part: Fraction
    potential_nonsquare: Fraction
    is_square: bool
    degree: int

    def to_record(self) -> dict:
        return {"value": format_factored(self.value),
                "value_raw": str(self.value),
                "square_part": str(self.square_part),
                "potential_nonsquare": str(self.potential_nonsquare),
                "is_square": self.is_square,
                "degree": self.degree}


def discriminant_values(f: RationalPolynomial, alpha, n: int) -> list:
    """``[disc(f - alpha), ..., disc(f^n - alpha)]`` by the recursion."""
    d, a = f.degree, f.leading
    P = critical_products(f, alpha, n)
    vals = [_base_sign(d) * Fraction(d) ** d * a ** (d - 1) * P[0]]
    for k in range(2, n + 1):
        sign = -1 if A(d, k) % 2 else 1
        vals.append(sign * a ** B(d, k) * Fraction(d) ** (d ** k) * vals[-1] ** d * P[k - 1])
    return vals


def potential_nonsquare(f: RationalPolynomial, alpha, n: int, products=None) -> Fraction:
    """Product of the odd-exponent factors in the recursion's expression.

    Odd ``d``: ``((d/4) d)^n prod_{k<=n} P_k``.  Even ``d``: ``a P_n`` for
    ``n >= 2`` and ``(-1)^(d(d-1)/2) a P_1`` for ``n = 1``.
    """
    d, a = f.degree, f.leading
    P = products if products is not None else critical_products(f, alpha, n)
    if d % 2:
        out = Fraction(kronecker_like_symbol(d) * d) ** n
        for p in P[:n]:
            out *= p
        return out
    if n == 1:
        return _base_sign(d) * a * P[0]
    return a * P[n - 1]


def discriminant(f: RationalPolynomial, alpha, n: int, *, max_degree: int = MAX_DEGREE) -> DiscriminantReport:
    if n < 1:
        raise OutOfRange("n must be >= 1")
    if f.degree < 2:
        raise ValueError("need degree >= 2")
    if f.degree ** n > max_degree:
        raise DegreeOverflow(f"degree {f.degree}**{n} exceeds the budget {max_degree}")
    P = critical_products(f, alpha, n)
    value = discriminant_values(f, alpha, n)[-1]
    pnf = potential_nonsquare(f, alpha, n, P)
    if pnf == 0:
        if value != 0:
            raise ArithmeticError("zero non-square factor for a nonzero discriminant")
        q = Fraction(0)
    else:
        q = rational_sqrt(value / pnf)
    return DiscriminantReport(value, q, pnf, is_rational_square(value), f.degree ** n)


def factor_integer(n: int, bound: int = 10 ** 6):
    """``[(p, e), ...]`` if ``|n|`` factors completely by trial division below
    ``bound``, else ``None``; ``n`` must be nonzero."""
    n = abs(n)
    out = []
    p = 2
    while p < bound and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        if n < bound or p * p > n:
            out.append((n, 1))
        else:
            return None
    return out


def _format_int(n: int) -> str:
    facs = factor_integer(n)
    if facs is None:
        return str(abs(n))
    if not facs:
        return "1"
    return "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in facs)


def format_factored(x) -> str:
    """``-2^3·3`` style text; unfactorable parts are left as raw integers."""
    x = Fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    body = _format_int(x.numerator)
    if x.denominator != 1:
        body += "/" + _format_int(x.denominator)
    return sign + body
