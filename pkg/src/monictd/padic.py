"""Per-prime valuation conditions for attainment, and the critical-witness
pipeline.

If a monic integer polynomial attains the obstruction a_d^(-1/d) of a
maximal obstruction polynomial Q, then every root of Q must have p-adic
absolute value |a_d|_p^(-1/d) for each prime p dividing a_d; the Newton
polygon translates that into coefficient valuation inequalities
v_p(a_{d-i}) >= e (d-i)/d (with e = v_p(a_d)), plus gcd(a_0, a_d) = 1.
A failed inequality proves no monic integer polynomial attains -- the
condition is necessary only, so the positive verdict is merely
"consistent", never "attainable".

The witness pipeline certifies that a given integer product R has
normalized sup strictly below a candidate value on an interval; any
irreducible polynomial with all roots inside and a larger obstruction
value must then divide R, so scanning R's factors identifies the maximal
obstruction polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .balls import PREC_CAP, log_hi, log_lo
from .cheb import (pairs_inf_log_lower, pairs_log_bounds_at,
                   pairs_sup_log_upper)
from .errors import (MonicInput, MultipleCandidates, NoCandidate,
                     QNotDividingR, RootsEscapeI)
from .poly import IntPoly, ObstructionValue, factor
from .realroots import (RatInterval, all_roots_real_in, isolate_roots_in,
                        refine)
from .robinson import ObstructionRecord, make_record


@dataclass(frozen=True)
class AttainmentVerdict:
    """impossible: attainment by a monic integer polynomial is ruled out."""

    status: str  # "impossible" | "consistent"
    failures: tuple[tuple[int, int, Fraction, object], ...]
    gcd_failure: bool

    @property
    def impossible(self) -> bool:
        return self.status == "impossible"


def _prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _vp(n: int, p: int):
    """p-adic valuation; math.inf for zero."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def attainment_obstruction(q: IntPoly) -> AttainmentVerdict:
    """Check gcd(a_0, a_d) = 1 and, for every prime p | a_d with
    e = v_p(a_d), the condition v_p(a_{d-i}) >= e (d-i)/d for all i.

    All comparisons are exact rational arithmetic.  "impossible" means no
    monic integer polynomial can attain the obstruction of q; "consistent"
    makes no attainability claim.
    """
    if q.lc < 0:
        q = -q
    if q.lc < 2:
        raise MonicInput("the condition applies to nonmonic polynomials")
    d = q.degree
    ad = q.lc
    failures = []
    gcd_failure = math.gcd(q.constant, ad) != 1
    for p, e in _prime_factors(ad).items():
        for i in range(1, d):
            coeff = q.coeffs[d - i]
            required = Fraction(e * (d - i), d)
            actual = _vp(coeff, p)
            if actual < required:
                failures.append((p, i, required, actual))
    status = "impossible" if (failures or gcd_failure) else "consistent"
    return AttainmentVerdict(status, tuple(failures), gcd_failure)


# ---------------------------------------------------------------------------
# Critical witnesses
# ---------------------------------------------------------------------------

def _as_factored(r) -> list[tuple[IntPoly, int]]:
    """Normalize a witness to (irreducible factor, exponent) pairs."""
    if isinstance(r, IntPoly):
        fl = factor(r)
        if abs(fl.content) != 1:
            raise ValueError("witness must have content 1")
        return list(fl.factors)
    return [(f, int(a)) for f, a in r]


def _witness_sup_points(pairs, interval: RatInterval):
    """Critical boxes of the weighted-log form inside the interval."""
    den = 1
    for _f, a in pairs:
        den = math.lcm(den, Fraction(a).denominator)
    cs = [int(Fraction(a) * den) for _f, a in pairs]
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    if g > 1:
        cs = [c // g for c in cs]
    n = IntPoly.zero()
    total = IntPoly.one()
    for f, _a in pairs:
        total = total * f
    for (f, _a), c in zip(pairs, cs):
        if c:
            n = n + c * (f.derivative() * total.exact_div(f))
    if n.degree < 1:
        return []
    return isolate_roots_in(n, interval)


def _sup_strictly_below(pairs, interval: RatInterval, num: int, den: int,
                        base: int, prec_cap: int = PREC_CAP) -> bool:
    """Certify sup of sum a_i log|f_i| over the interval < (num/den) log base.

    Checks every critical point of the form inside the interval and both
    endpoints with precision escalation and box refinement; returns False
    as soon as some region certifies at or above the target.
    """
    coef = Fraction(num, den)

    def target_lo(prec):
        lg = log_hi(Fraction(base), prec) if coef < 0 else log_lo(Fraction(base), prec)
        return coef * lg

    def point_ok(x: Fraction) -> bool:
        prec = 64
        while prec <= prec_cap:
            flo, fup = pairs_log_bounds_at(pairs, x, prec)
            if fup < target_lo(prec):
                return True
            if flo is not None and flo > coef * (
                    log_lo(Fraction(base), prec) if coef < 0
                    else log_hi(Fraction(base), prec)):
                return False
            prec *= 2
        return False

    for x in (interval.lo, interval.hi):
        if not point_ok(x):
            return False
    for box in _witness_sup_points(pairs, interval):
        b = box
        while True:
            lo = max(b.interval.lo, interval.lo)
            hi = min(b.interval.hi, interval.hi)
            if lo > hi:
                break
            width = hi - lo
            width_bits = (width.denominator.bit_length()
                          - width.numerator.bit_length()) if width > 0 else prec_cap
            prec = max(64, width_bits + 64)
            if prec > prec_cap:
                return False
            fup = pairs_sup_log_upper(pairs, lo, hi, prec)
            if fup < target_lo(prec):
                break
            flo = pairs_inf_log_lower(pairs, lo, hi, prec)
            if flo is not None and flo > coef * (
                    log_lo(Fraction(base), prec) if coef < 0
                    else log_hi(Fraction(base), prec)):
                return False
            b = refine(b, b.width / 16)
    return True


def critical_witness(r, q: IntPoly, interval: RatInterval) -> str:
    """Certify that q is a critical polynomial for the interval.

    ``r`` is an integer polynomial (or its (factor, exponent) pairs) with
    q dividing r; when the normalized sup of r on the interval is
    certified strictly below q's obstruction value, every polynomial with
    a smaller normalized sup must be divisible by q, so q is critical and
    its value bounds the diameter from below.  Returns "critical" or
    "inconclusive" (never "false").
    """
    if q.lc < 0:
        q = -q
    if q.lc < 2:
        raise MonicInput("critical candidates must be nonmonic")
    if not factor(q).is_irreducible:
        raise ValueError("critical candidates must be irreducible")
    if not all_roots_real_in(q, interval):
        raise RootsEscapeI(f"{q.to_text()} has roots outside {interval}")
    pairs = _as_factored(r)
    if not any(f == q for f, _a in pairs):
        raise QNotDividingR(f"{q.to_text()} does not divide the witness")
    deg_r = sum(a * f.degree for f, a in pairs)
    weighted = [(f, Fraction(a)) for f, a in pairs]
    # sup log|R| < deg R * log(a_d^(-1/d)) = -(deg R / d) log a_d
    ok = _sup_strictly_below(weighted, interval, -deg_r, q.degree, q.lc)
    return "critical" if ok else "inconclusive"


def identify_maximal_critical(r, interval: RatInterval) -> ObstructionRecord:
    """Scan the witness's irreducible factors for the unique nonmonic one
    with all roots inside the interval and obstruction value above the
    witness's certified normalized sup; that factor is the maximal
    obstruction polynomial for the interval."""
    pairs = _as_factored(r)
    deg_r = sum(a * f.degree for f, a in pairs)
    weighted = [(f, Fraction(a)) for f, a in pairs]
    candidates = []
    for f, _a in pairs:
        g = -f if f.lc < 0 else f
        if g.lc < 2:
            continue
        if not all_roots_real_in(g, interval):
            continue
        # value above the witness sup: sup log|R| < -(deg R/d) log lc
        if _sup_strictly_below(weighted, interval, -deg_r, g.degree, g.lc):
            candidates.append(g)
    if not candidates:
        raise NoCandidate("no nonmonic factor with all roots inside and "
                          "value above the witness bound")
    if len(candidates) > 1:
        raise MultipleCandidates("several candidate maximal obstruction "
                                 "polynomials", candidates)
    return make_record(candidates[0])
