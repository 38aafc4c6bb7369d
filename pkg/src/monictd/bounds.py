"""Certified two-sided bounds for the interval-length thresholds L-(t)
and L+(t).

L-(t) is the infimum of lengths of intervals whose monic integer
transfinite diameter exceeds t; L+(t) the supremum of lengths where it
stays at or below t.  Upper bounds for L- come from root spans of single
obstruction polynomials; upper bounds for L+ from covers: families of
root-range intervals whose left endpoints advance by exactly one, so
every long-enough interval traps an integer translate of some member.
Lower bounds come from certified products (an interval where a monic
product stays at or below t witnesses L+(t) >= its length, and a
translate-closed family of such intervals pushes L- up), and from a
one-parameter normalized weighted product whose admissible half-length
is the root of an explicit transcendental equation.

The envelope combines everything on a grid with the exact clamps
L-(t) = 0 for t <= 1/2 and L-(t) = L+(t) = 4t for t >= 1, propagating
monotonicity both ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balls import (Enclosure, PREC_CAP, format_directed, log_ball,
                    reciprocal_ball, resolve_sign)
from .cheb import CertifiedProduct
from .errors import (AlphaOutOfRange, MissingTranslateClosure, NoRoot,
                     NotCertified, Undecided, ValueNotAboveT)
from .poly import IntPoly, ObstructionValue
from .realroots import RatInterval
from .robinson import ObstructionRecord

HALF = Fraction(1, 2)
# floor of the certified families' lower bound for L-(1/2); enters the
# envelope only after the product suite has certified
MIN_GAP_FLOOR = Fraction(1008848, 1000000)


# ---------------------------------------------------------------------------
# Cover systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverSystem:
    """Intervals sorted by strictly increasing left endpoints with the last
    left endpoint exactly one more than the first; each interval carries
    the witness (an obstruction record or a certified product) whose root
    range or certified interval it is."""

    entries: tuple[tuple[RatInterval, object], ...]

    def __post_init__(self):
        ivs = [iv for iv, _ in self.entries]
        if len(ivs) < 2:
            raise MissingTranslateClosure("cover needs at least two entries")
        for a, b in zip(ivs, ivs[1:]):
            if not a.lo < b.lo:
                raise ValueError("cover left endpoints must strictly increase")
        if ivs[-1].lo != ivs[0].lo + 1:
            raise MissingTranslateClosure(
                f"last left endpoint {ivs[-1].lo} != first + 1")

    @property
    def intervals(self) -> list[RatInterval]:
        return [iv for iv, _ in self.entries]


def cover_from_records(records) -> CoverSystem:
    """Cover from obstruction records (sorted by root range), closed by
    appending the first record translated by +1."""
    recs = sorted(records, key=lambda r: (r.root_range.lo, r.root_range.hi))
    entries = [(r.root_range, r) for r in recs]
    first = recs[0].translate(1)
    entries.append((first.root_range, first))
    return CoverSystem(tuple(entries))


def cover_from_products(certified) -> CoverSystem:
    """Cover from certified products (their certified intervals), closed by
    appending the first one translated by +1."""
    from .cheb import translate_certified
    cps = sorted(certified, key=lambda c: (c.interval.lo, c.interval.hi))
    entries = [(c.interval, c) for c in cps]
    first = translate_certified(cps[0], 1)
    entries.append((first.interval, first))
    return CoverSystem(tuple(entries))


# ---------------------------------------------------------------------------
# Elementary bounds
# ---------------------------------------------------------------------------

def lminus_upper(rec: ObstructionRecord, t) -> Enclosure:
    """The record's root span bounds L-(t) from above when its obstruction
    value strictly exceeds t."""
    t = Fraction(t)
    if rec.poly.lc < 2:
        raise ValueNotAboveT("witness must be nonmonic")
    if not rec.value > t:
        raise ValueNotAboveT(f"{rec.value!r} is not above {t}")
    return rec.span


def cover_max_gap(cover: CoverSystem, t) -> Enclosure:
    """M = max(b_{i+1} - a_i): every interval of length >= M contains an
    integer translate of some member, so L+(t) <= M when every witness
    value exceeds t."""
    m, _ = cover_max_gap_detail(cover, t)
    return Enclosure.exact(m, 96)


def cover_max_gap_detail(cover: CoverSystem, t) -> tuple[Fraction, int]:
    """(M, i) with the exact max gap and the 0-based index attaining it."""
    t = Fraction(t)
    for iv, wit in cover.entries:
        if not isinstance(wit, ObstructionRecord):
            raise ValueNotAboveT("max-gap cover witnesses must be obstruction records")
        if not wit.value > t:
            raise ValueNotAboveT(f"witness value {wit.value!r} not above {t}")
    ivs = cover.intervals
    best, best_i = None, -1
    for i in range(len(ivs) - 1):
        gap = ivs[i + 1].hi - ivs[i].lo
        if best is None or gap > best:
            best, best_i = gap, i
    return best, best_i


def cover_min_gap(cover: CoverSystem, t) -> Enclosure:
    """m = min(b_i - a_{i+1}): every interval of length <= m is contained
    in an integer translate of some member, so L-(t) >= m when every
    witness product is certified with sup at most t."""
    t = Fraction(t)
    for iv, wit in cover.entries:
        if not isinstance(wit, CertifiedProduct):
            raise NotCertified("min-gap cover witnesses must be certified products")
        if not wit.sup_value <= t:
            raise NotCertified(f"certified sup {wit.sup_value!r} exceeds {t}")
        if wit.interval != iv:
            raise NotCertified("cover interval differs from the certified one")
    ivs = cover.intervals
    m = min(ivs[i].hi - ivs[i + 1].lo for i in range(len(ivs) - 1))
    return Enclosure.exact(m, 96)


def lplus_lower(product: CertifiedProduct) -> Enclosure:
    """|I| of a certified product interval bounds L+(sup value) from below."""
    if not isinstance(product, CertifiedProduct):
        raise NotCertified("lplus_lower needs a certified product")
    return Enclosure.exact(product.interval.length, 96)


# ---------------------------------------------------------------------------
# The parametric lower-bound curve
# ---------------------------------------------------------------------------

_ALPHA_STAR_CACHE: dict[int, Enclosure] = {}


def alpha_star(width: Fraction = Fraction(1, 10 ** 6)) -> Enclosure:
    """The root in (0, 1) of 4 a^a (1-a)^(1-a) = 5^a, certified."""
    width = Fraction(width)
    key = width.denominator
    if key in _ALPHA_STAR_CACHE:
        return _ALPHA_STAR_CACHE[key]

    def gap_sign(a: Fraction) -> int:
        return resolve_sign(lambda p: _alpha_gap_ball(a, p),
                            what=f"sign at {a}")

    lo, hi = Fraction(1, 4), Fraction(3, 4)
    assert gap_sign(lo) > 0 and gap_sign(hi) < 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        if gap_sign(mid) > 0:
            lo = mid
        else:
            hi = mid
    out = Enclosure.from_endpoints(lo, hi, 96)
    _ALPHA_STAR_CACHE[key] = out
    return out


def _alpha_gap_ball(a: Fraction, prec: int) -> Enclosure:
    """log 4 + a log a + (1-a) log(1-a) - a log 5 as a ball."""
    e = Enclosure.exact
    acc = log_ball(Fraction(4), prec)
    acc = acc + log_ball(a, prec) * e(a, prec)
    acc = acc + log_ball(1 - a, prec) * e(1 - a, prec)
    acc = acc - log_ball(Fraction(5), prec) * e(a, prec)
    return acc


def alpha_upper_limit_check(alpha: Fraction) -> bool:
    """alpha <= ln4/ln5, decided exactly: 5^p <= 4^q for alpha = p/q."""
    p, q = alpha.numerator, alpha.denominator
    return 5 ** p <= 4 ** q


def ell_alpha(alpha, width: Fraction = Fraction(1, 10 ** 8)) -> Enclosure:
    """Admissible interval length for the normalized one-parameter product.

    ell is the root of (1-a) log(l^2-1) + a log|1 - l^2/5| = 0 on the
    branch (sqrt 5, inf) for a above the crossover exponent and (1, sqrt 5)
    below it (there the least such root); the certified conclusion is
    L+(5^(a/2)/2) >= ell and L-(5^(a/2)/2) >= ell - 1.
    """
    alpha = Fraction(alpha)
    if alpha < 0 or not alpha_upper_limit_check(alpha):
        raise AlphaOutOfRange(f"alpha = {alpha} outside [0, ln4/ln5]")

    def s_ball(x: Fraction, prec: int) -> Enclosure:
        e = Enclosure.exact
        x2 = x * x
        acc = log_ball(x2 - 1, prec) * e(1 - alpha, prec)
        if alpha:
            acc = acc + log_ball(abs(1 - Fraction(x2, 5)), prec) * e(alpha, prec)
        return acc

    def s_sign(x: Fraction) -> int:
        return resolve_sign(lambda p: s_ball(x, p), what=f"curve sign at {x}")

    sqrt5 = _sqrt_enclosure(5)
    if alpha == 0:
        on_low_branch = True
    else:
        on_low_branch = _alpha_at_most_star(alpha)
    if on_low_branch:
        # increasing segment (1, sqrt(5-4a)); the least root lives here
        hump = _sqrt_enclosure(5 - 4 * alpha, 192)
        lo = Fraction(1)
        step = Fraction(1, 16)
        while s_sign(lo + step) > 0:
            step /= 4
        lo = lo + step
        hi = hump.lo
        while s_sign(hi) < 0:
            # the crossing hides between the enclosure's lower end and the
            # true hump; tightening the enclosure moves the probe upward
            if hump.prec >= 1 << 14:
                raise NoRoot(f"no low-branch crossing resolved for {alpha}")
            hump = _sqrt_enclosure(5 - 4 * alpha, hump.prec * 2)
            hi = hump.lo
    else:
        lo = sqrt5.hi
        while s_sign(lo) > 0:
            sqrt5 = _sqrt_enclosure(5, sqrt5.prec * 2)
            lo = sqrt5.hi
        hi = lo + 1
        while s_sign(hi) < 0:
            hi += 1
            if hi > 64:
                raise NoRoot("no outer-branch crossing found")
    while hi - lo > width:
        mid = (lo + hi) / 2
        if s_sign(mid) < 0:
            lo = mid
        else:
            hi = mid
    return Enclosure.from_endpoints(lo, hi, 96)


def _sqrt_enclosure(x, prec: int = 96) -> Enclosure:
    from .balls import sqrt_ball
    return sqrt_ball(Fraction(x), prec)


def _alpha_at_most_star(alpha: Fraction) -> bool:
    width = Fraction(1, 10 ** 6)
    while True:
        st = alpha_star(width)
        if alpha <= st.lo:
            return True
        if alpha >= st.hi:
            return False
        width /= 1024
        if width < Fraction(1, 10 ** 40):
            raise Undecided(f"alpha = {alpha} too close to the crossover")


def alpha_for_threshold(t: Fraction, grain: int = 720) -> Fraction | None:
    """The largest a = r/grain with 5^(a/2)/2 <= t, exactly verified, used
    to transport the parametric curve to a grid threshold; None for t < 1/2."""
    t = Fraction(t)
    if t < HALF:
        return None
    if t == HALF:
        return Fraction(0)
    prec = 96
    num = log_ball(2 * t, prec)
    den = log_ball(Fraction(5), prec)
    est = num * reciprocal_ball(den, prec) * Enclosure.exact(2 * grain, prec)
    r = int(est.lo)  # floor of a dyadic rational

    def admissible(r_: int) -> bool:
        # 5^(r/(2 grain)) <= 2t  <=>  5^r <= (2t)^(2 grain)
        if r_ < 0:
            return True
        return (5 ** r_ * t.denominator ** (2 * grain)
                <= (2 * t.numerator) ** (2 * grain))

    while not admissible(r):
        r -= 1
    while admissible(r + 1):
        r += 1
    return Fraction(max(r, 0), grain)


# ---------------------------------------------------------------------------
# Envelope
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundPoint:
    """Certified two-sided information at one threshold t."""

    t: Fraction
    lminus_lo: Enclosure | None
    lminus_hi: Enclosure | None
    lplus_lo: Enclosure | None
    lplus_hi: Enclosure | None


def envelope(t_grid, records=(), products=(), covers=(),
             min_gap: Fraction | None = None,
             use_parametric: bool = True) -> list[BoundPoint]:
    """Best certified bounds at each grid threshold.

    records: obstruction records (span upper bounds for L-).
    products: certified products (length lower bounds for L+).
    covers: max-gap cover systems, each applicable below its witnesses'
    minimum obstruction value.
    min_gap: a certified lower bound for L-(1/2) from a product cover
    (enters only when the certification suite supplied it).
    """
    grid = sorted(set(Fraction(t) for t in t_grid))
    cover_data = []
    for cov in covers:
        vmin = min((w.value for _, w in cov.entries), default=None)
        m, _ = cover_max_gap_detail(cov, 0)
        cover_data.append((vmin, m))
    pts: list[BoundPoint] = []
    for t in grid:
        if t >= 1:
            val = Enclosure.exact(4 * t, 96)
            pts.append(BoundPoint(t, val, val, val, val))
            continue
        if t <= HALF:
            lminus_lo = lminus_hi = Enclosure.exact(0, 96)
        else:
            lm_lo = None
            if min_gap is not None:
                lm_lo = min_gap
            if use_parametric:
                a = alpha_for_threshold(t)
                if a is not None and alpha_upper_limit_check(a):
                    ell = ell_alpha(a)
                    cand = ell.lo - 1
                    if lm_lo is None or cand > lm_lo:
                        lm_lo = cand
            lminus_lo = Enclosure.exact(max(lm_lo, Fraction(0)), 96) \
                if lm_lo is not None else None
            spans = [r.span.hi for r in records if r.value > t and r.poly.lc >= 2]
            lminus_hi = Enclosure.exact(min(spans), 96) if spans else None
        # L+ lower bounds
        lp_lo = 2 * t if t <= HALF else None
        for cp in products:
            if cp.sup_value <= t:
                cand = cp.interval.length
                if lp_lo is None or cand > lp_lo:
                    lp_lo = cand
        if use_parametric and t >= HALF:
            a = alpha_for_threshold(t)
            if a is not None and alpha_upper_limit_check(a):
                cand = ell_alpha(a).lo
                if lp_lo is None or cand > lp_lo:
                    lp_lo = cand
        lplus_lo = Enclosure.exact(lp_lo, 96) if lp_lo is not None else None
        gaps = [m for vmin, m in cover_data if vmin is not None and vmin > t]
        lplus_hi = Enclosure.exact(min(gaps), 96) if gaps else None
        pts.append(BoundPoint(t, lminus_lo, lminus_hi, lplus_lo, lplus_hi))
    return _propagate_monotone(pts)


def _propagate_monotone(pts: list[BoundPoint]) -> list[BoundPoint]:
    """Lower bounds propagate rightward, upper bounds leftward (both
    functions are nondecreasing in t).  Points with t >= 1 hold exact
    values; they feed the propagation but are never overwritten."""
    n = len(pts)
    cols = {name: [getattr(p, name) for p in pts]
            for name in ("lminus_lo", "lminus_hi", "lplus_lo", "lplus_hi")}
    for name in ("lminus_lo", "lplus_lo"):
        arr = cols[name]
        best = None
        for i in range(n):
            if pts[i].t < 1 and best is not None and \
                    (arr[i] is None or arr[i].lo < best.lo):
                arr[i] = best
            if arr[i] is not None and (best is None or arr[i].lo > best.lo):
                best = arr[i]
    for name in ("lminus_hi", "lplus_hi"):
        arr = cols[name]
        best = None
        for i in range(n - 1, -1, -1):
            if pts[i].t < 1 and best is not None and \
                    (arr[i] is None or arr[i].hi > best.hi):
                arr[i] = best
            if arr[i] is not None and (best is None or arr[i].hi < best.hi):
                best = arr[i]
    return [BoundPoint(p.t, cols["lminus_lo"][i], cols["lminus_hi"][i],
                       cols["lplus_lo"][i], cols["lplus_hi"][i])
            for i, p in enumerate(pts)]


def default_grid() -> list[Fraction]:
    """Thresholds: published threshold values (rounded down a hair so the
    strict value comparisons apply), 0.01 steps on [0.5, 1], and the
    clamp-region samples."""
    from .fixtures import length_threshold_rows
    grid = {Fraction(3, 10), Fraction(11, 10), Fraction(5, 4)}
    for k in range(50, 101):
        grid.add(Fraction(k, 100))
    for base, index, _ in length_threshold_rows():
        v = ObstructionValue(base, index)
        lo = _value_lower_rational(v)
        grid.add(lo)
    grid.add(Fraction(1))
    return sorted(grid)


def _value_lower_rational(v: ObstructionValue, digits: int = 6) -> Fraction:
    """A rational strictly below a^(-1/d), within 10^-digits of it."""
    scale = 10 ** digits
    lo, hi = 0, scale
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if v > Fraction(mid, scale):
            lo = mid
        else:
            hi = mid
    return Fraction(lo, scale)


def write_envelope_csv(points, path) -> None:
    """One row per grid point, 10 significant digits, rounded in the safe
    direction per column (lower bounds down, upper bounds up)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,lminus_lo,lminus_hi,lplus_lo,lplus_hi\n")
        for p in points:
            cells = [format_directed(Fraction(p.t), 10, up=False)]
            for enc, up in ((p.lminus_lo, False), (p.lminus_hi, True),
                            (p.lplus_lo, False), (p.lplus_hi, True)):
                if enc is None:
                    cells.append("")
                else:
                    cells.append(format_directed(enc.hi if up else enc.lo,
                                                 10, up=up))
            fh.write(",".join(cells) + "\n")


# ---------------------------------------------------------------------------
# Exact value on unit-length intervals
# ---------------------------------------------------------------------------

def tm_unit_interval(interval: RatInterval, product_cover: CoverSystem,
                     min_gap: Fraction | None = None) -> Fraction:
    """Certified exact value 1/2 for intervals of length between 1 and the
    certified minimum gap of the product cover.

    Lower bound: any interval of length >= 1 contains an integer translate
    of the point 1/2, where the linear obstruction pins the value to at
    least 1/2.  Upper bound: the interval is contained in an integer
    translate of a certified sup-1/2 interval (the min-gap guarantee).
    """
    length = interval.length
    if length < 1:
        raise ValueError("interval shorter than 1")
    if min_gap is None:
        min_gap = cover_min_gap(product_cover, HALF).lo
    if length > min_gap:
        raise ValueError(f"length {float(length)} above the certified gap")
    # half-integer translate: exists n with lo <= 1/2 + n <= hi
    import math
    n = math.ceil(interval.lo - HALF)
    if not interval.contains(HALF + n):
        raise ValueError("no half-integer translate found")  # impossible for length >= 1
    # containment in a translate of a certified interval
    ivs = product_cover.intervals
    base = ivs[0].lo
    shift = math.floor(interval.lo - base)
    for cand_shift in (shift, shift + 1):
        lo = interval.lo - cand_shift
        hi = interval.hi - cand_shift
        for iv, wit in product_cover.entries:
            if iv.lo <= lo and hi <= iv.hi:
                if not wit.sup_value <= HALF:
                    continue
                return HALF
    raise ValueError("no covering translate found despite the gap guarantee")
