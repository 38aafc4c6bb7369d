"""Farey-interval machinery, Pell families of quadratic attainment,
the zero-endpoint interval family, and the factor-exponent lower bound.

Every interval with no integer inside sits inside a unique minimal Farey
interval [b1/c1, b2/c2] (consecutive fractions of the Farey sequence one
order below the smallest interior denominator), found here by
Stern-Brocot descent.  The mediant's linear polynomial is always a
critical polynomial for the interval, and case analysis on which
endpoints belong to the interval gives the maximal obstruction exactly.

The quadratic-residue check proves exact diameter values on Farey
intervals by constructing a monic integer quadratic that is small at both
endpoints and monotone across the interval; quadratic Pell solutions feed
infinitely many such intervals for a fixed monic quadratic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .balls import (Enclosure, log_ball, log_hi, log_lo, resolve_sign,
                    sqrt_ball)
from .errors import (ContainsInteger, NoRoot, ReducibleOrComplex, Undecided)
from .poly import IntPoly
from .realroots import (RatInterval, count_roots_in, isolate_roots, refine)


@dataclass(frozen=True)
class FareyInterval:
    """[b1/c1, b2/c2] with b2*c1 - b1*c2 = 1 and reduced endpoints."""

    b1: int
    c1: int
    b2: int
    c2: int

    def __post_init__(self):
        if self.c1 < 1 or self.c2 < 1:
            raise ValueError("denominators must be positive")
        if self.b2 * self.c1 - self.b1 * self.c2 != 1:
            raise ValueError("not a Farey pair: b2*c1 - b1*c2 != 1")
        if math.gcd(self.b1, self.c1) != 1 or math.gcd(self.b2, self.c2) != 1:
            raise ValueError("endpoints must be reduced")

    @property
    def left(self) -> Fraction:
        return Fraction(self.b1, self.c1)

    @property
    def right(self) -> Fraction:
        return Fraction(self.b2, self.c2)

    @property
    def mediant(self) -> Fraction:
        return Fraction(self.b1 + self.b2, self.c1 + self.c2)

    @property
    def interval(self) -> RatInterval:
        return RatInterval(self.left, self.right)


@dataclass(frozen=True)
class ObstructionVerdict:
    """Maximal obstruction of an interval: value, polynomial, and which of
    the four endpoint cases produced it."""

    value: Fraction
    polynomial: IntPoly
    case_tag: str  # left-endpoint | right-endpoint | full-farey | mediant


def minimal_farey_interval(interval: RatInterval) -> FareyInterval:
    """Stern-Brocot descent to the consecutive-fraction bracket around an
    interval whose interior contains no integer."""
    if interval.length <= 0:
        raise ValueError("need a positive-length interval")
    if interval.interior_contains_integer():
        raise ContainsInteger(f"{interval} has an integer inside")
    lo, hi = interval.lo, interval.hi
    n = math.floor(lo)
    b1, c1, b2, c2 = n, 1, n + 1, 1
    while True:
        mb, mc = b1 + b2, c1 + c2
        med = Fraction(mb, mc)
        if lo < med < hi:
            return FareyInterval(b1, c1, b2, c2)
        if med <= lo:
            b1, c1 = mb, mc
        else:
            b2, c2 = mb, mc


def farey_max_obstruction(interval: RatInterval) -> ObstructionVerdict:
    """The four-case maximal obstruction via the minimal Farey interval.

    Both endpoint-membership tests are exact; the interval is treated as
    closed.  The mediant's linear polynomial is the critical polynomial in
    the fall-through case.
    """
    f = minimal_farey_interval(interval)
    left_in = f.left == interval.lo
    right_in = f.right == interval.hi
    if f.c1 >= 2 and left_in and not right_in:
        return ObstructionVerdict(Fraction(1, f.c1),
                                  IntPoly.linear(f.c1, f.b1), "left-endpoint")
    if f.c2 >= 2 and right_in and not left_in:
        return ObstructionVerdict(Fraction(1, f.c2),
                                  IntPoly.linear(f.c2, f.b2), "right-endpoint")
    if f.c1 >= 2 and f.c2 >= 2 and left_in and right_in:
        if f.c1 <= f.c2:
            poly = IntPoly.linear(f.c1, f.b1)
        else:
            poly = IntPoly.linear(f.c2, f.b2)
        return ObstructionVerdict(Fraction(1, min(f.c1, f.c2)), poly,
                                  "full-farey")
    return ObstructionVerdict(Fraction(1, f.c1 + f.c2),
                              IntPoly.linear(f.c1 + f.c2, f.b1 + f.b2),
                              "mediant")


# ---------------------------------------------------------------------------
# Quadratic-residue certificates on Farey intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FareyVerdict:
    status: str  # "proved" | "inconclusive"
    value: Fraction | None
    witness: IntPoly | None
    farey: FareyInterval


def farey_conjecture_check(f: FareyInterval) -> FareyVerdict:
    """Residue test proving t_M = 1/c1 on a Farey interval.

    Needs b1^2 = +-1 (mod c1) and some B = b2^2 (mod c2) with
    c1^2 |B| < c2^2; the witnessing monic quadratic takes values +-1/c1^2
    and B/c2^2 at the endpoints and is monotone across the interval, so
    its normalized sup is exactly 1/c1, matching the obstruction of
    c1 x - b1.  Never returns "false": failure is only inconclusive.
    """
    if f.c1 < 2:
        raise ValueError("check needs c1 >= 2")
    if f.c2 < 2:
        raise ValueError("check needs noninteger endpoints (c2 >= 2)")
    eps_options = [e for e in (1, -1) if (f.b1 * f.b1 - e) % f.c1 == 0]
    if not eps_options:
        return FareyVerdict("inconclusive", None, None, f)
    r = (f.b2 * f.b2) % f.c2
    bound = Fraction(f.c2 * f.c2, f.c1 * f.c1)
    candidates = []
    k = 0
    while True:
        opts = [r - k * f.c2, r + k * f.c2] if k else [r]
        added = False
        for cand in opts:
            if abs(cand) < bound:
                candidates.append(cand)
                added = True
        if not added and k > 0 and abs(r - k * f.c2) >= bound \
                and abs(r + k * f.c2) >= bound:
            break
        k += 1
    candidates.sort(key=lambda b: (abs(b), -b if b else 0))
    for big_b in candidates:
        for eps in eps_options:
            witness = _residue_quadratic(f, eps, big_b)
            if witness is not None:
                return FareyVerdict("proved", Fraction(1, f.c1), witness, f)
    return FareyVerdict("inconclusive", None, None, f)


def _residue_quadratic(f: FareyInterval, eps: int, big_b: int) -> IntPoly | None:
    """The monic quadratic x^2 + ux + v with P(b1/c1) = eps/c1^2 and
    P(b2/c2) = B/c2^2, verified monotone on the interval; None if the
    construction leaves the integers or the monotonicity fails."""
    b1, c1, b2, c2 = f.b1, f.c1, f.b2, f.c2
    k1, rem1 = divmod(big_b - b2 * b2, c2)
    k2, rem2 = divmod(eps - b1 * b1, c1)
    if rem1 or rem2:
        return None
    u = c1 * k1 - c2 * k2
    num = eps - b1 * b1 - u * b1 * c1
    v, rem = divmod(num, c1 * c1)
    if rem:
        return None
    p = IntPoly((v, u, 1))
    if p(f.left) != Fraction(eps, c1 * c1):
        return None
    if p(f.right) != Fraction(big_b, c2 * c2):
        return None
    crit = Fraction(-u, 2)
    if f.left < crit < f.right:
        return None
    if abs(p(f.left)) <= abs(p(f.right)):
        return None
    return p


# ---------------------------------------------------------------------------
# Pell families
# ---------------------------------------------------------------------------

def pell_solutions(p: IntPoly, limit: int) -> list[tuple[int, int, int]]:
    """All (b, c, norm) with b^2 + a1 b c + a0 c^2 = norm = +-1 and
    1 <= c <= limit, for a monic quadratic with nonsquare positive
    discriminant."""
    if p.degree != 2 or not p.is_monic:
        raise ReducibleOrComplex("need a monic quadratic")
    a0, a1 = p.coeffs[0], p.coeffs[1]
    disc = a1 * a1 - 4 * a0
    if disc <= 0 or math.isqrt(disc) ** 2 == disc:
        raise ReducibleOrComplex("discriminant must be positive and nonsquare")
    out = []
    for c in range(1, limit + 1):
        base = disc * c * c
        for norm in (1, -1):
            s2 = base + 4 * norm
            if s2 < 0:
                continue
            s = math.isqrt(s2)
            if s * s != s2:
                continue
            for sg in ((s,) if s == 0 else (s, -s)):
                num = -a1 * c + sg
                if num % 2 == 0:
                    out.append((num // 2, c, norm))
    out.sort(key=lambda bcn: (Fraction(bcn[0], bcn[1]), bcn[1]))
    dedup = []
    for b, c, n in out:
        if not dedup or (dedup[-1][0], dedup[-1][1]) != (b, c):
            dedup.append((b, c, n))
    return dedup


def pell_family(p: IntPoly, limit: int) -> list[FareyInterval]:
    """Farey intervals [b_i/c_i, b/c] on which the monic quadratic attains
    the maximal obstruction 1/c_i, built from Pell solutions with
    increasing c and increasing ratios."""
    sols = pell_solutions(p, limit)
    a0, a1 = p.coeffs[0], p.coeffs[1]
    cands = sorted((Fraction(b, c), b, c) for b, c, _n in sols if c >= 2)
    # longest subsequence with both the ratio and c strictly increasing
    best = [1] * len(cands)
    prev = [-1] * len(cands)
    for i in range(len(cands)):
        for j in range(i):
            if cands[j][0] < cands[i][0] and cands[j][2] < cands[i][2] \
                    and best[j] + 1 > best[i]:
                best[i] = best[j] + 1
                prev[i] = j
    chain: list[tuple[int, int]] = []
    if cands:
        i = max(range(len(cands)), key=lambda k: best[k])
        while i != -1:
            chain.append((cands[i][1], cands[i][2]))
            i = prev[i]
        chain.reverse()
    out = []
    for (bi, ci), (bj, cj) in zip(chain, chain[1:]):
        fi = _farey_right_neighbor(bi, ci, Fraction(bj, cj))
        if fi is None:
            continue
        b, c = fi
        val = b * b + a1 * b * c + a0 * c * c
        if ci * ci * abs(val) > c * c:
            continue  # quadratic too large at the right endpoint
        crit2 = Fraction(-a1, 2)
        iv = RatInterval(Fraction(bi, ci), Fraction(b, c))
        if iv.contains_interior(crit2):
            continue
        if _interior_half_integer(iv):
            continue
        out.append(FareyInterval(bi, ci, b, c))
    return out


def _farey_right_neighbor(b1: int, c1: int, max_ratio: Fraction):
    """(b, c) with b*c1 - b1*c = 1 and c > c1, minimal with b/c <= max_ratio.

    The ratio b/c = b1/c1 + 1/(c1 c) decreases as c walks the solution
    family (b + k b1, c + k c1), so the first admissible k wins.
    """
    g, x, y = _ext_gcd(c1, b1)
    if g != 1:
        return None
    b, c = x, -y  # b*c1 - b1*c = x*c1 + b1*y = 1
    if c <= c1:
        k = (c1 - c) // c1 + 1
        b, c = b + k * b1, c + k * c1
    guard = 0
    while Fraction(b, c) > max_ratio and guard < 10 ** 6:
        b, c = b + b1, c + c1
        guard += 1
    if c <= c1 or Fraction(b, c) > max_ratio:
        return None
    return b, c


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _interior_half_integer(iv: RatInterval) -> bool:
    lo2, hi2 = 2 * iv.lo, 2 * iv.hi
    return math.floor(lo2) + 1 < hi2


# ---------------------------------------------------------------------------
# Zero-endpoint intervals
# ---------------------------------------------------------------------------

def family_polynomial(n: int) -> IntPoly:
    """x^(n^2-2) * (x^2 - n x + 1)."""
    return IntPoly.monomial(1, n * n - 2) * IntPoly((1, -n, 1))


def delta_n(n: int) -> tuple[Enclosure, Enclosure]:
    """Certified (beta_n, alpha_n) for the zero-endpoint family.

    beta_n is the smaller root of x^2 - n x + 1 (the first zero of the
    family polynomial past its hump at 1/n); alpha_n the least root above
    beta_n where the normalized family polynomial climbs back to (1/n)^(n^2).
    The pair certifies that the diameter stays at 1/n on [0, alpha_n].
    """
    if n < 2:
        raise ValueError("need n >= 2")
    quad = IntPoly((1, -n, 1))
    if n == 2:
        beta = Enclosure.exact(1, 96)
        beta_hi = Fraction(1)
    else:
        box = refine(isolate_roots(quad)[0], Fraction(1, 10 ** 12))
        beta = Enclosure.from_endpoints(box.interval.lo, box.interval.hi, 96)
        beta_hi = box.interval.hi
    # H(x) = n^(n^2) x^(n^2-2) |x^2 - n x + 1| - 1, first root above beta;
    # past beta the quadratic is negative for n >= 3 but stays a square
    # (hence nonnegative) for n = 2
    branch = quad if n == 2 else -quad
    body = IntPoly.monomial(1, n * n - 2) * branch
    h = n ** (n * n) * body - 1
    lo = beta_hi
    step = Fraction(1, 64)
    while h.sign_at(lo) >= 0:
        lo += Fraction(1, 2 ** 20)  # nudge past the tangency at beta
    hi = lo + step
    while h.sign_at(hi) < 0:
        hi += step
    while hi - lo > Fraction(1, 10 ** 12):
        mid = (lo + hi) / 2
        if h.sign_at(mid) < 0:
            lo = mid
        else:
            hi = mid
    if count_roots_in(h, RatInterval(beta_hi, hi)) != 1:
        raise NoRoot("root past the family zero is not isolated")
    alpha = Enclosure.from_endpoints(lo, hi, 96)
    return beta, alpha


# ---------------------------------------------------------------------------
# Factor-exponent lower bound
# ---------------------------------------------------------------------------

def gamma_lower(b, m, width: Fraction = Fraction(1, 10 ** 9)) -> Enclosure:
    """Least positive root of
    (1+x)log(1+x) - (1-x)log(1-x) - 2x log(2x) - x log b + log m = 0.

    The left side increases up to x = 1/sqrt(1+4b) and is negative near 0,
    so the least root sits on that segment; certified by ball bisection.
    Raises NoRoot when the function stays negative through its maximum.
    """
    b, m = Fraction(b), Fraction(m)
    if not (0 < b <= 1) or not (0 < m < 1):
        raise ValueError("need 0 < b <= 1 and 0 < m < 1")

    def f_ball(x: Fraction, prec: int) -> Enclosure:
        e = Enclosure.exact
        acc = log_ball(1 + x, prec) * e(1 + x, prec)
        acc = acc - log_ball(1 - x, prec) * e(1 - x, prec)
        acc = acc - log_ball(2 * x, prec) * e(2 * x, prec)
        acc = acc - log_ball(b, prec) * e(x, prec)
        acc = acc + log_ball(m, prec)
        return acc

    def f_sign(x: Fraction) -> int:
        return resolve_sign(lambda p: f_ball(x, p), what=f"gamma sign at {x}")

    xm = _inv_sqrt_enclosure(1 + 4 * b)
    probe = xm.lo
    if f_sign(probe) <= 0:
        if _gamma_sup_negative(b, m, xm):
            raise NoRoot("factor-exponent equation has no root below the hump")
        raise Undecided("gamma root existence unresolved at the hump")
    lo = probe / 2
    while f_sign(lo) > 0:
        lo /= 2
    hi = probe
    while hi - lo > width:
        mid = (lo + hi) / 2
        if f_sign(mid) > 0:
            hi = mid
        else:
            lo = mid
    return Enclosure.from_endpoints(lo, hi, 96)


def _gamma_sup_negative(b: Fraction, m: Fraction, xm: Enclosure) -> bool:
    """Certified upper bound of f over the hump enclosure is negative.

    Term-wise interval bound: on (0, 1) the first and last variable terms
    increase, -2x log(2x) decreases once 2x > 1/e, and -(1-x)log(1-x)
    never exceeds 1/e; summing per-term maxima over [lo, hi] with upward
    rounding gives a sound bound on f's supremum there.
    """
    lo, hi = xm.lo, xm.hi
    if not (Fraction(1, 2) < lo < hi < 1):
        return False  # monotonicity ranges not guaranteed; stay undecided
    prec = 192
    up = Fraction(0)
    up += (1 + hi) * log_hi(1 + hi, prec)
    up += Fraction(3679, 10000)  # > 1/e, the global max of -(1-x)log(1-x)
    up += -2 * lo * log_lo(2 * lo, prec)
    up += hi * (-log_lo(b, prec))
    up += log_hi(m, prec)
    return up < 0


def _inv_sqrt_enclosure(x, prec: int = 128) -> Enclosure:
    from .balls import reciprocal_ball
    return reciprocal_ball(sqrt_ball(Fraction(x), prec), prec)
