"""Dyadic ball arithmetic with outward rounding.

An :class:`Enclosure` is a certified ball ``center +- radius`` whose center
and radius are dyadic rationals (integer mantissa times a power of two),
tagged with the working precision in bits.  Ring operations are exact on
dyadics and are followed by an outward rounding step, so the true value is
always contained in the result.

Logs, exponentials and square roots are evaluated on the ball endpoints
through MPFR (via gmpy2) with directed rounding; all three are monotone,
so rounding the input and the result in the same direction is sound.

Comparisons that certification depends on go through a precision ladder:
start at 64 bits and double until the sign is decided, raising
:class:`~monictd.errors.Undecided` at the 4096-bit cap rather than
guessing.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from .errors import Undecided

PREC_START = 64
PREC_CAP = 4096


def precision_ladder(start: int = PREC_START, cap: int = PREC_CAP):
    """Yield start, 2*start, ... up to cap inclusive."""
    p = start
    while p <= cap:
        yield p
        p *= 2


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def round_dyadic(x: Fraction, prec: int, up: bool) -> Fraction:
    """Directed rounding of x to a dyadic with about ``prec`` significant bits."""
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    shift = prec - (abs(n).bit_length() - d.bit_length())
    if shift >= 0:
        num, den = n << shift, d
    else:
        num, den = n, d << (-shift)
    q, r = divmod(num, den)  # floor division, exact when r == 0
    if r and up:
        q += 1
    if shift >= 0:
        return Fraction(q, 1 << shift)
    return Fraction(q << (-shift))


def _round_down_with_ulp(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Round x toward -inf to prec bits; return (value, ulp bound on error)."""
    if x == 0:
        return Fraction(0), Fraction(0)
    n, d = x.numerator, x.denominator
    shift = prec - (abs(n).bit_length() - d.bit_length())
    if shift >= 0:
        num, den = n << shift, d
        ulp = Fraction(1, 1 << shift)
    else:
        num, den = n, d << (-shift)
        ulp = Fraction(1 << (-shift))
    q, r = divmod(num, den)
    val = Fraction(q, 1 << shift) if shift >= 0 else Fraction(q << (-shift))
    return val, (ulp if r else Fraction(0))


class Enclosure:
    """Certified dyadic ball ``center +- radius`` at a working precision."""

    __slots__ = ("center", "radius", "prec")

    def __init__(self, center, radius=0, prec: int = PREC_START):
        center = Fraction(center)
        radius = Fraction(radius)
        if radius < 0:
            raise ValueError("negative radius")
        if not (is_dyadic(center) and is_dyadic(radius)):
            c, ulp = _round_down_with_ulp(center, prec)
            radius = round_dyadic(radius + ulp, prec, up=True)
            center = c
        self.center = center
        self.radius = radius
        self.prec = prec

    # -- construction ---------------------------------------------------------

    @classmethod
    def exact(cls, x, prec: int = PREC_START) -> "Enclosure":
        """Ball around a rational; exact (radius 0) when x is dyadic."""
        return cls(Fraction(x), 0, prec)

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int = PREC_START) -> "Enclosure":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("lo > hi")
        lo_d = lo if is_dyadic(lo) else round_dyadic(lo, prec, up=False)
        hi_d = hi if is_dyadic(hi) else round_dyadic(hi, prec, up=True)
        c = (lo_d + hi_d) / 2
        return cls(c, hi_d - c, prec)

    # -- views ----------------------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return self.center - self.radius

    @property
    def hi(self) -> Fraction:
        return self.center + self.radius

    @property
    def width(self) -> Fraction:
        return 2 * self.radius

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_ball(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __float__(self):
        return float(self.center)

    def __repr__(self):
        return f"Enclosure({float(self.center)!r} +- {float(self.radius)!r})"

    # -- rounding -------------------------------------------------------------

    def rounded(self, prec: int | None = None) -> "Enclosure":
        p = prec or self.prec
        c, ulp = _round_down_with_ulp(self.center, p)
        r = round_dyadic(self.radius + ulp, p, up=True)
        out = Enclosure.__new__(Enclosure)
        out.center, out.radius, out.prec = c, r, p
        return out

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(x, prec) -> "Enclosure":
        if isinstance(x, Enclosure):
            return x
        return Enclosure(Fraction(x), 0, prec)

    def __add__(self, other):
        o = Enclosure._coerce(other, self.prec)
        return Enclosure(self.center + o.center, self.radius + o.radius,
                         max(self.prec, o.prec)).rounded()

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.center, self.radius, self.prec)

    def __sub__(self, other):
        return self + (-Enclosure._coerce(other, self.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = Enclosure._coerce(other, self.prec)
        c = self.center * o.center
        r = (abs(self.center) * o.radius + abs(o.center) * self.radius
             + self.radius * o.radius)
        return Enclosure(c, r, max(self.prec, o.prec)).rounded()

    __rmul__ = __mul__

    def abs_bounds(self) -> tuple[Fraction, Fraction]:
        """(min, max) of |x| over the ball."""
        lo, hi = self.lo, self.hi
        if lo > 0:
            return lo, hi
        if hi < 0:
            return -hi, -lo
        return Fraction(0), max(-lo, hi)

    # -- certified comparisons --------------------------------------------------

    def strictly_less(self, other) -> bool:
        o = Enclosure._coerce(other, self.prec)
        return self.hi < o.lo

    def strictly_greater(self, other) -> bool:
        o = Enclosure._coerce(other, self.prec)
        return self.lo > o.hi

    def sign(self) -> int | None:
        """Certified sign, or None when the ball straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None


# ---------------------------------------------------------------------------
# Directed transcendental endpoints (MPFR)
# ---------------------------------------------------------------------------

def _mpfr_to_fraction(v) -> Fraction:
    if v == 0:
        return Fraction(0)
    m, e = v.as_mantissa_exp()
    m, e = int(m), int(e)
    if e >= 0:
        return Fraction(m << e)
    return Fraction(m, 1 << (-e))


def _directed(fn_name: str, x: Fraction, prec: int, up: bool) -> Fraction:
    """fn(x) rounded toward +inf (up) or -inf; fn must be monotone increasing."""
    rounding = gmpy2.RoundUp if up else gmpy2.RoundDown
    with gmpy2.context(precision=prec + 16, round=rounding):
        xa = gmpy2.mpfr(mpq(x.numerator, x.denominator))
        fn = getattr(gmpy2, fn_name)
        v = fn(xa)
    return _mpfr_to_fraction(v)


def log_lo(x: Fraction, prec: int) -> Fraction:
    if x <= 0:
        raise ValueError("log of nonpositive value")
    return _directed("log", x, prec, up=False)


def log_hi(x: Fraction, prec: int) -> Fraction:
    if x <= 0:
        raise ValueError("log of nonpositive value")
    return _directed("log", x, prec, up=True)


def log_ball(x, prec: int) -> Enclosure:
    """Certified enclosure of log(x) for a positive rational or ball."""
    if isinstance(x, Enclosure):
        lo, hi = x.lo, x.hi
    else:
        lo = hi = Fraction(x)
    if lo <= 0:
        raise ValueError("log needs a strictly positive lower endpoint")
    return Enclosure.from_endpoints(log_lo(lo, prec), log_hi(hi, prec), prec)


def exp_ball(x, prec: int) -> Enclosure:
    if isinstance(x, Enclosure):
        lo, hi = x.lo, x.hi
    else:
        lo = hi = Fraction(x)
    return Enclosure.from_endpoints(_directed("exp", lo, prec, up=False),
                                    _directed("exp", hi, prec, up=True), prec)


def sqrt_ball(x, prec: int) -> Enclosure:
    if isinstance(x, Enclosure):
        lo, hi = x.lo, x.hi
    else:
        lo = hi = Fraction(x)
    if lo < 0:
        raise ValueError("sqrt of negative value")
    return Enclosure.from_endpoints(_directed("sqrt", lo, prec, up=False),
                                    _directed("sqrt", hi, prec, up=True), prec)


def pow_ball(x, expo: Fraction, prec: int) -> Enclosure:
    """x**expo for positive x (rational or ball), certified."""
    expo = Fraction(expo)
    if expo == 0:
        return Enclosure.exact(1, prec)
    lb = log_ball(x, prec)
    return exp_ball(lb * Enclosure.exact(expo, prec), prec)


def reciprocal_ball(x: Enclosure, prec: int) -> Enclosure:
    """1/x for a ball separated from zero."""
    lo, hi = x.lo, x.hi
    if lo <= 0 <= hi:
        raise ZeroDivisionError("reciprocal of a ball containing zero")
    inv_lo = round_dyadic(Fraction(1) / hi, prec, up=False)
    inv_hi = round_dyadic(Fraction(1) / lo, prec, up=True)
    if lo < 0:
        inv_lo, inv_hi = (round_dyadic(Fraction(1) / hi, prec, up=False),
                          round_dyadic(Fraction(1) / lo, prec, up=True))
    return Enclosure.from_endpoints(min(inv_lo, inv_hi), max(inv_lo, inv_hi), prec)


def dot_log_ball(weights, values, prec: int) -> Enclosure:
    """Certified sum of w_i * log(v_i) for rational weights and positive values."""
    acc = Enclosure.exact(0, prec)
    for w, v in zip(weights, values):
        w = Fraction(w)
        if w == 0:
            continue
        acc = acc + log_ball(v, prec) * Enclosure.exact(w, prec)
    return acc


def resolve_sign(make_ball, cap: int = PREC_CAP, what: str = "comparison") -> int:
    """Certified sign of a real number computed by ``make_ball(prec)``.

    Doubles the precision until the ball separates from zero; an exactly
    representable zero ball returns 0.  Raises Undecided at the cap.
    """
    for prec in precision_ladder(cap=cap):
        b = make_ball(prec)
        s = b.sign()
        if s is not None:
            return s
    raise Undecided(f"{what} not decided at {cap} bits")


# ---------------------------------------------------------------------------
# Directed decimal formatting (CSV output)
# ---------------------------------------------------------------------------

def format_directed(x: Fraction, sig: int, up: bool) -> str:
    """Decimal string with ``sig`` significant digits, rounded toward
    +inf (up=True) or -inf."""
    x = Fraction(x)
    if x == 0:
        return "0"
    neg = x < 0
    ax = -x if neg else x
    # k = number of digits before the decimal point in ax
    k = len(str(ax.numerator // ax.denominator)) if ax >= 1 else 0
    if ax < 1:
        # count leading zeros after the point
        y = ax
        k = 0
        while y < 1:
            y *= 10
            k -= 1
        k += 1  # now 10^(k-1) <= ax < 10^k
    scale = sig - k
    scaled = ax * Fraction(10) ** scale
    n, r = divmod(scaled.numerator, scaled.denominator)
    round_up_mag = r != 0 and (up != neg)
    if round_up_mag:
        n += 1
    digits = str(n)
    if len(digits) > sig:  # round-up overflowed 99..9 to 100..0; drop a zero
        digits = digits[:-1]
        scale -= 1
    # place the decimal point: value = digits * 10^(-scale)
    if scale <= 0:
        out = digits + "0" * (-scale)
    elif scale < len(digits):
        out = digits[:-scale] + "." + digits[-scale:]
    else:
        out = "0." + "0" * (scale - len(digits)) + digits
    return ("-" + out) if neg else out
