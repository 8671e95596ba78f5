"""Rational interval arithmetic and certified real-root isolation."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from ..errors import Inconclusive
from .laurent import LaurentPoly
from .matrices import IntegerMatrix, LaurentMatrix, char_poly, determinant

# refinement stops here; roughly 1200 decimal digits
MAX_BITS = 4000


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RationalInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def disjoint(self, other: "RationalInterval") -> bool:
        return not self.intersects(other)

    def is_positive(self) -> bool:
        return self.lo > 0

    def _coerce(self, other) -> "RationalInterval":
        return other if isinstance(other, RationalInterval) else RationalInterval.point(other)

    def __add__(self, other) -> "RationalInterval":
        other = self._coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RationalInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalInterval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalInterval":
        other = self._coerce(other)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalInterval":
        other = self._coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("interval division by an interval containing zero")
        return self * RationalInterval(1 / other.hi, 1 / other.lo)

    def __pow__(self, k: int) -> "RationalInterval":
        out = RationalInterval.point(1)
        for _ in range(k):
            out = out * self
        return out

    def outward(self, bits: int) -> "RationalInterval":
        """Round endpoints outward to dyadics with `bits` fractional bits."""
        scale = 1 << bits
        lo = Fraction((self.lo * scale).__floor__(), scale)
        hi = Fraction((self.hi * scale).__ceil__(), scale)
        return RationalInterval(lo, hi)

    def decimal_bounds(self, digits: int) -> tuple[str, str]:
        """Outward-rounded decimal strings with `digits` significant digits."""
        return _to_decimal(self.lo, digits, ROUND_FLOOR), _to_decimal(self.hi, digits, ROUND_CEILING)

    def __str__(self) -> str:
        lo, hi = self.decimal_bounds(12)
        return f"[{lo}, {hi}]"


def _to_decimal(x: Fraction, digits: int, rounding) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "f") if d == d.to_integral_value() or abs(d) >= Decimal("1e-6") else str(d)


def horner(coeffs: Sequence[int], x: RationalInterval) -> RationalInterval:
    """Interval evaluation; coeffs highest degree first."""
    acc = RationalInterval.point(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def mean_value_eval(coeffs: Sequence[int], x: RationalInterval) -> RationalInterval:
    """Centered form p(m) + p'(X)(X - m); much tighter than Horner on narrow intervals."""
    m = x.mid
    pm = Fraction(0)
    for c in coeffs:
        pm = pm * m + c
    deg = len(coeffs) - 1
    deriv = [c * (deg - k) for k, c in enumerate(coeffs[:-1])]
    slope = horner(deriv, x) if deriv else RationalInterval.point(0)
    return pm + slope * (x - m)


# Sturm sequences over Q, coefficient lists highest degree first.


def _strip(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        q = a[0] / b[0]
        for k in range(len(b)):
            a[k] -= q * b[k]
        a = a[1:]
    return _strip(a) if a else [Fraction(0)]


def _quo(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, q = list(a), []
    while len(a) >= len(b):
        c = a[0] / b[0]
        q.append(c)
        for k in range(len(b)):
            a[k] -= c * b[k]
        a = a[1:]
    return q or [Fraction(0)]


def _derivative(p: list[Fraction]) -> list[Fraction]:
    deg = len(p) - 1
    return _strip([c * (deg - k) for k, c in enumerate(p[:-1])]) if deg > 0 else [Fraction(0)]


def _squarefree(p: list[Fraction]) -> list[Fraction]:
    a, b = p, _derivative(p)
    while any(b) and len(b) > 1:
        a, b = b, _rem(a, b)
    g = a if not any(b) else [Fraction(1)]
    return _quo(p, g) if len(g) > 1 else p


def sturm_sequence(coeffs: Sequence[int]) -> list[list[Fraction]]:
    """Sturm chain of the square-free part, so repeated roots count once."""
    p0 = _squarefree(_strip([Fraction(c) for c in coeffs]))
    seq = [p0, _derivative(p0)]
    while any(seq[-1]) and len(seq[-1]) > 1:
        r = _rem(seq[-2], seq[-1])
        if not any(r):
            break
        seq.append([-c for c in r])
    return seq


def _eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def sign_changes(seq: list[list[Fraction]], x: Fraction | None) -> int:
    """Sign variations at x; x=None means +infinity."""
    if x is None:
        vals = [p[0] for p in seq if any(p)]
    else:
        vals = [_eval(p, x) for p in seq]
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[list[Fraction]], a: Fraction, b: Fraction | None) -> int:
    """Distinct real roots in (a, b]."""
    return sign_changes(seq, a) - sign_changes(seq, b)


def _coeff_list(p) -> list[int]:
    if isinstance(p, LaurentPoly):
        return p.univariate_coeffs()
    return [int(c) for c in p]


def root_bound(coeffs: Sequence[int]) -> Fraction:
    """Cauchy bound: every root has absolute value below it."""
    lead = abs(coeffs[0])
    return 1 + Fraction(max((abs(c) for c in coeffs[1:]), default=0), lead)


def isolate_perron_root(p, width) -> RationalInterval:
    """Enclosure of the largest real root certified by Sturm counts."""
    coeffs = _coeff_list(p)
    width = Fraction(width)
    seq = sturm_sequence(coeffs)
    hi = root_bound(coeffs)
    lo = -hi
    if count_roots(seq, lo, None) == 0:
        raise Inconclusive("polynomial has no real root")
    # a midpoint that is itself the root collapses the enclosure to a point
    while count_roots(seq, lo, hi) > 1 or hi - lo > width:
        mid = (lo + hi) / 2
        if _eval(seq[0], mid) == 0 and count_roots(seq, mid, None) == 0:
            return RationalInterval.point(mid)
        if count_roots(seq, mid, None) >= 1:
            lo = mid
        else:
            hi = mid
        if (hi - lo).denominator.bit_length() > MAX_BITS:
            raise Inconclusive("root isolation exhausted the precision cap")
    return RationalInterval(lo, hi)


def refine_root(p, interval: RationalInterval, width) -> RationalInterval:
    """Shrink an isolating interval of a simple root by sign bisection."""
    coeffs = [Fraction(c) for c in _coeff_list(p)]
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        return interval
    flo = _eval(coeffs, lo)
    if flo == 0:
        return RationalInterval.point(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = _eval(coeffs, mid)
        if fm == 0:
            return RationalInterval.point(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if (hi - lo).denominator.bit_length() > MAX_BITS:
            raise Inconclusive("root refinement exhausted the precision cap")
    return RationalInterval(lo, hi)


def _adjugate_column(A: IntegerMatrix, j: int) -> list[list[int]]:
    """Column j of adj(uI - A) as coefficient lists in u."""
    n = A.rows
    vars_ = ("u",)
    u = LaurentPoly.var(vars_, "u")
    B = [[(u if r == c else 0) - A[r, c] for c in range(n)] for r in range(n)]
    out = []
    for i in range(n):
        # adj(B)[i][j] = (-1)^(i+j) det(B without row j, column i)
        minor = LaurentMatrix(
            vars_, [[B[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
        )
        d = determinant(minor) * (-1 if (i + j) % 2 else 1)
        out.append(d.univariate_coeffs() if d.terms else [0])
    return out


def interval_eigenvector(A: IntegerMatrix, lam: RationalInterval, width=None) -> list[RationalInterval]:
    """L1-normalized positive eigenvector of A for the Perron root enclosed by `lam`.

    The right eigenvector is read off a column of adj(lam*I - A).  The enclosure
    of lam is tightened until every entry is certified positive (or negative,
    in which case the column is flipped) and, if given, narrower than `width`.
    """
    n = A.rows
    if n == 1:
        return [RationalInterval.point(1)]
    cp = char_poly(A)
    columns = [_adjugate_column(A, j) for j in range(n)]
    column = next((c for c in columns if any(any(x) for x in c)), None)
    if column is None:
        raise Inconclusive("adjugate vanishes identically; eigenvalue is not simple")
    target = Fraction(width) if width is not None else None
    current = lam
    while True:
        entries = [mean_value_eval(c, current) for c in column]
        if all(e.lo > 0 for e in entries) or all(e.hi < 0 for e in entries):
            if entries[0].hi < 0:
                entries = [-e for e in entries]
            total = sum(entries[1:], entries[0])
            v = [e / total for e in entries]
            if target is None or all(x.width <= target for x in v):
                return v
        w = current.width / 2**32 if current.width else Fraction(0)
        if current.width == 0:
            # an exact rational eigenvalue: nothing left to refine
            raise Inconclusive("eigenvector positivity not certified at an exact eigenvalue")
        current = refine_root(cp, current, w)
        if current.width and current.width.denominator.bit_length() > MAX_BITS:
            raise Inconclusive("eigenvector certification exhausted the precision cap")
