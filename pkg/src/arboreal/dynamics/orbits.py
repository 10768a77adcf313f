"""Critical orbits, post-critical finiteness and the overgroup router."""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import IrrationalCritical, NotPCF, UncoveredCase
from ..overgroups import OvergroupSpec
from .polynomial import RationalPolynomial, rational_roots

DEFAULT_MAX_STEPS = 64
DEFAULT_MAX_BITS = 4096


def critical_points(f: RationalPolynomial) -> tuple:
    """Roots of ``f'`` with multiplicity, sorted; all must be rational."""
    df = f.derivative()
    if df.degree < 0:
        return ()
    roots = rational_roots(df)
    if len(roots) != df.degree:
        raise IrrationalCritical(f"f' = {df} does not split over the rationals")
    return tuple(roots)


def _multiset(values) -> tuple:
    return tuple(sorted(values))


@dataclass(frozen=True)
class CriticalOrbitData:
    """``orbit_multisets[k]`` is ``f^k(C_f)`` as a sorted tuple, ``k = 0..L+O``."""
    critical_multiset: tuple
    tail_length: int
    period: int
    orbit_multisets: tuple = field(repr=False)

    @property
    def L(self) -> int:
        return self.tail_length

    @property
    def O(self) -> int:  # noqa: E743
        return self.period

    def at(self, k: int) -> tuple:
        """``f^k(C_f)`` for any ``k >= 0``, read off the eventual cycle."""
        L, O = self.tail_length, self.period
        if k >= L:
            k = L + (k - L) % O
        return self.orbit_multisets[k]

    def to_record(self) -> dict:
        return {"L": self.tail_length, "O": self.period,
                "critical": [str(c) for c in self.critical_multiset],
                "orbit": [[str(x) for x in m] for m in self.orbit_multisets]}


def detect_pcf(f: RationalPolynomial, max_steps: int = DEFAULT_MAX_STEPS,
               max_bits: int = DEFAULT_MAX_BITS) -> CriticalOrbitData:
    """Follow the critical multiset until some multiset recurs."""
    if f.degree < 2:
        raise ValueError("need degree >= 2")
    crit = critical_points(f)
    seen = {}
    history = []
    cur = _multiset(crit)
    for k in range(max_steps + 1):
        if cur in seen:
            L = seen[cur]
            return CriticalOrbitData(crit, L, k - L, tuple(history) + (cur,))
        seen[cur] = k
        history.append(cur)
        if any(max(x.numerator.bit_length(), x.denominator.bit_length()) > max_bits
               for x in cur):
            raise NotPCF(f"critical orbit exceeds {max_bits}-bit height after {k} steps")
        cur = _multiset(f(x) for x in cur)
    raise NotPCF(f"no recurrence within {max_steps} steps")


def disc_square_level(f: RationalPolynomial, alpha=None, orbit: CriticalOrbitData | None = None):
    """``(iterate_index, field_level)``: disc(f^iterate_index - alpha) is a square
    over the splitting field of ``f^field_level - alpha``."""
    if orbit is None:
        orbit = detect_pcf(f)
    d, L, O = f.degree, orbit.tail_length, orbit.period
    if d % 2:
        if L <= 1:
            return 2 * O, 0
        return L + 2 * O - 1, L - 1
    if L == 0:
        return O + 1, 1
    return L + O, L


def check_square_level(f: RationalPolynomial, alpha, orbit: CriticalOrbitData | None = None):
    """Check the multiset identities behind :func:`disc_square_level`.

    Returns ``(ok, residual)``.  For odd degree the critical products over
    ``k = field_level+1 .. iterate_index`` must pair up into squares; for even
    degree ``f^iterate_index(C_f)`` must equal ``f^field_level(C_f)``.
    ``residual`` is the leftover unit: the level-1 discriminant of an even
    degree ``d = 2 mod 4`` carries an extra ``-1``, which the identities
    cannot absorb, so ``ok`` is false there unless -1 is accounted for
    elsewhere.  At field level 0 the rational discriminant is tested directly.
    """
    from .discriminant import discriminant
    if orbit is None:
        orbit = detect_pcf(f)
    idx, level = disc_square_level(f, alpha, orbit)
    d = f.degree
    if level == 0:
        return discriminant(f, alpha, idx).is_square, 1
    if d % 2:
        counts = Counter()
        for k in range(level + 1, idx + 1):
            counts.update(orbit.at(k))
        ok = all(v % 2 == 0 for v in counts.values()) and (idx - level) % 2 == 0
        return ok, 1
    ok = orbit.at(idx) == orbit.at(level)
    residual = -1 if level == 1 and (d * (d - 1) // 2) % 2 else 1
    return ok and residual == 1, residual


def classify_overgroup(f: RationalPolynomial, alpha=None, orbit: CriticalOrbitData | None = None):
    """Route a PCF polynomial to the overgroup containing its arboreal images.

    Returns ``(spec, flags)``.  Flags are short machine-readable notes:

    * ``F-vs-E``: odd degree with ``L > 1``; the returned F family is the one
      in the main statement, and ``alternative`` gives the E parameters
      ``(L+2O+1, L-1)`` used in the argument for it.
    * ``minus-one``: even degree ``d = 2 mod 4`` whose spec rests on the
      level-1 discriminant, where a sign ``-1`` is left over.

    Even degree with ``L = 1`` falls in neither even sub-case and raises
    :class:`UncoveredCase`.
    """
    if orbit is None:
        orbit = detect_pcf(f)
    d, L, O = f.degree, orbit.tail_length, orbit.period
    flags = []
    if d % 2:
        if L <= 1:
            return OvergroupSpec("E", d, 2 * O), flags
        flags.append({"flag": "F-vs-E", "alternative": {"family": "E", "m": L + 2 * O + 1,
                                                        "mp": L - 1}})
        return OvergroupSpec("F", d, L + 2 * O - 1, L - 1), flags
    if L == 1:
        raise UncoveredCase(
            f"even degree {d} with tail length 1 is not covered",
            flags=[{"flag": "even-L1-uncovered"}],
            candidate={"family": "E", "d": d, "m": O + 1, "mp": 1})
    if L == 0:
        if (d * (d - 1) // 2) % 2:
            flags.append({"flag": "minus-one"})
        return OvergroupSpec("E", d, O + 1, 1), flags
    return OvergroupSpec("E", d, L + O, L), flags
