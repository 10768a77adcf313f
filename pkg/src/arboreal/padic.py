"""p-adic valuations, Newton polygons and Eisenstein certificates."""

import math
from dataclasses import dataclass
from fractions import Fraction

from .dynamics.polynomial import MAX_DEGREE, RationalPolynomial, iterate
from .errors import DegreeOverflow, OutOfRange

INF = math.inf
CONDITION_PRIMES = (3, 2)
SHIFTS = (0, 1)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise OutOfRange(f"{p!r} is not a prime")


def _vint(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(x, p: int):
    """Exponent of ``p`` in the rational ``x``; ``math.inf`` for zero."""
    _require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _vint(x.numerator, p) - _vint(x.denominator, p)


@dataclass(frozen=True)
class NewtonPolygon:
    prime: int
    segments: tuple  # (slope, length) pairs, slopes increasing

    @property
    def length(self) -> int:
        return sum(length for _, length in self.segments)

    def to_record(self) -> dict:
        return {"prime": self.prime,
                "segments": [[str(s), n] for s, n in self.segments]}


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(g: RationalPolynomial, p: int) -> NewtonPolygon:
    """Lower convex hull of ``(i, v_p(g_i))`` over the nonzero coefficients.

    Vanishing low-order coefficients (roots at zero, valuation infinity) are
    reported as a leading segment of slope ``-inf`` so lengths sum to the
    degree.
    """
    _require_prime(p)
    if g.is_zero():
        raise ValueError("zero polynomial has no Newton polygon")
    pts = [(i, valuation(c, p)) for i, c in enumerate(g.coeffs) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segs = []
    if pts[0][0] > 0:
        segs.append((-INF, pts[0][0]))
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y0, x1 - x0), x1 - x0))
    return NewtonPolygon(p, tuple(segs))


def is_eisenstein(g: RationalPolynomial, p: int) -> bool:
    """Eisenstein criterion on the primitive integral form of ``g``."""
    _require_prime(p)
    if g.degree < 1:
        return False
    _, h = g.primitive()
    c = h.integer_coeffs()
    return c[-1] % p != 0 and all(x % p == 0 for x in c[:-1]) and c[0] % (p * p) != 0


def eisenstein_after_shift(g: RationalPolynomial, p: int, s) -> bool:
    """Is ``g(z + s)`` Eisenstein at ``p``?"""
    return is_eisenstein(g.shift(Fraction(s)), p)


@dataclass(frozen=True)
class Certificate:
    prime: int
    shift: int
    n: int

    def to_record(self) -> dict:
        return {"prime": self.prime, "shift": self.shift, "n": self.n}


def iterate_irreducibility_certificate(f: RationalPolynomial, alpha, n: int,
                                       primes=CONDITION_PRIMES, shifts=SHIFTS,
                                       max_degree: int = MAX_DEGREE):
    """First ``(p, s)`` making ``f^n - alpha`` Eisenstein after ``z -> z + s``.

    Returns ``None`` when no candidate applies; no other irreducibility test
    is attempted.
    """
    if n < 1:
        raise OutOfRange("n must be >= 1")
    if f.degree ** n > max_degree:
        raise DegreeOverflow(f"degree {f.degree}**{n} exceeds the budget {max_degree}")
    g = iterate(f, n, max_degree=max_degree) - Fraction(alpha)
    for p in primes:
        for s in shifts:
            if eisenstein_after_shift(g, p, s):
                return Certificate(p, s, n)
    return None


def condition_check(alpha, p: int = 2, q: int = 3):
    """Both ``v_q(alpha) = 1 or v_q(1 - alpha) = 1`` and the same at ``p``.

    Returns ``(holds, witness)``; the witness names the disjunct that fired
    at each prime (``"alpha"``, ``"1-alpha"`` or ``None``).
    """
    alpha = Fraction(alpha)
    if alpha in (0, 1):
        raise OutOfRange("alpha must avoid 0 and 1")
    witness = {}
    for r in (q, p):
        if valuation(alpha, r) == 1:
            witness[r] = "alpha"
        elif valuation(1 - alpha, r) == 1:
            witness[r] = "1-alpha"
        else:
            witness[r] = None
    return all(v is not None for v in witness.values()), witness
