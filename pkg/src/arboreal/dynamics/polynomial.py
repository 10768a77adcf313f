"""Dense polynomials with exact rational coefficients."""

from fractions import Fraction
from math import gcd, isqrt

from ..errors import DegreeOverflow

MAX_DEGREE = 3 ** 5
MAX_BITS = 1 << 20


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("use exact numbers (int, Fraction or str), not float")
    return Fraction(x)


class RationalPolynomial:
    """``coeffs[i]`` is the coefficient of ``z**i``; trailing zeros are trimmed.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def parse(cls, text: str) -> "RationalPolynomial":
        """Read comma-separated coefficients, constant term first: ``"1, 0, -3, 2"``."""
        parts = [p for p in text.replace(";", ",").split(",")]
        if not parts or any(not p.strip() for p in parts):
            raise ValueError(f"cannot parse polynomial {text!r}")
        try:
            return cls(Fraction(p.strip()) for p in parts)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse polynomial {text!r}") from None

    @classmethod
    def z(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        if isinstance(x, RationalPolynomial):
            return self.compose(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other):
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = RationalPolynomial.constant(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        dv = other.degree
        for k in range(len(rem) - dv - 1, -1, -1):
            coef = rem[k + dv] / lead
            q[k] = coef
            if coef:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= coef * y
        return RationalPolynomial(q), RationalPolynomial(rem[:dv] if dv > 0 else [])

    __divmod__ = divmod

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        """``self(inner(z))`` by Horner's rule."""
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, s) -> "RationalPolynomial":
        """``self(z + s)``."""
        return self.compose(RationalPolynomial((s, 1)))

    def monic(self) -> "RationalPolynomial":
        return RationalPolynomial([c / self.leading for c in self.coeffs])

    def primitive(self):
        """``(content, P)`` with ``self = content * P``, ``P`` integral and primitive
        with positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), RationalPolynomial([x // g for x in ints])

    def integer_coeffs(self) -> list:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("polynomial is not integral")
        return [int(c) for c in self.coeffs]

    def max_bits(self) -> int:
        return max((max(c.numerator.bit_length(), c.denominator.bit_length())
                    for c in self.coeffs), default=0)

    def to_text(self) -> str:
        return ", ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                body = "" if mag == 1 else f"{mag}*"
                body += "z" if i == 1 else f"z^{i}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"RationalPolynomial([{self.to_text()}])"


def iterate(f: RationalPolynomial, n: int, *, max_degree: int = MAX_DEGREE,
            max_bits: int = MAX_BITS) -> RationalPolynomial:
    """The ``n``-th iterate ``f∘...∘f``; ``iterate(f, 0)`` is ``z``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if f.degree >= 2 and f.degree ** n > max_degree:
        raise DegreeOverflow(f"degree {f.degree}**{n} exceeds the budget {max_degree}")
    out = RationalPolynomial.z()
    for _ in range(n):
        out = f.compose(out)
        if out.max_bits() > max_bits:
            raise DegreeOverflow(f"coefficient size exceeds {max_bits} bits")
    return out


def _bareiss_det(rows):
    """Determinant of an integer matrix, fraction-free and exact."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(p_coeffs, q_coeffs):
    """Sylvester matrix from coefficient lists given highest degree first."""
    dp, dq = len(p_coeffs) - 1, len(q_coeffs) - 1
    size = dp + dq
    rows = []
    for i in range(dq):
        rows.append([0] * i + list(p_coeffs) + [0] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([0] * i + list(q_coeffs) + [0] * (size - dq - 1 - i))
    return rows


def resultant(p: RationalPolynomial, q: RationalPolynomial) -> Fraction:
    """``Res(p, q) = lead(p)**deg(q) * prod q(r)`` over the roots ``r`` of ``p``.

    Computed as the Sylvester determinant, after scaling both inputs to
    integer polynomials.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    dp, dq = p.degree, q.degree
    if dp == 0:
        return p.leading ** dq
    if dq == 0:
        return q.leading ** dp
    cp, P = p.primitive()
    cq, Q = q.primitive()
    det = _bareiss_det(sylvester_matrix(P.integer_coeffs()[::-1], Q.integer_coeffs()[::-1]))
    return Fraction(det) * cp ** dq * cq ** dp


def discriminant_by_resultant(g: RationalPolynomial) -> Fraction:
    """``(-1)**(D(D-1)/2) * Res(g, g') / lead(g)``."""
    D = g.degree
    if D < 1:
        raise ValueError("discriminant needs degree >= 1")
    if D == 1:
        return Fraction(1)
    sign = -1 if (D * (D - 1) // 2) % 2 else 1
    return sign * resultant(g, g.derivative()) / g.leading


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: RationalPolynomial) -> list:
    """Rational roots with multiplicity (rational root theorem, then deflation)."""
    if p.degree < 1:
        return []
    roots = []
    _, P = p.primitive()
    c = list(P.coeffs)
    while c and c[0] == 0:
        roots.append(Fraction(0))
        c.pop(0)
    rest = RationalPolynomial(c)
    if rest.degree < 1:
        return sorted(roots)
    a0, an = int(rest.coeffs[0]), int(rest.leading)
    cands = sorted({Fraction(s * u, v) for u in _divisors(a0) for v in _divisors(an)
                    for s in (1, -1)})
    for r in cands:
        lin = RationalPolynomial((-r, 1))
        while rest.degree >= 1 and rest(r) == 0:
            roots.append(r)
            rest = rest.divmod(lin)[0]
    return sorted(roots)


def is_rational_square(x) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator


def rational_sqrt(x) -> Fraction:
    x = Fraction(x)
    if not is_rational_square(x):
        raise ValueError(f"{x} is not a rational square")
    return Fraction(isqrt(x.numerator), isqrt(x.denominator))
