"""Enumeration of integer polynomials with all roots real inside a box.

For a fixed degree d and lead coefficient, coefficients are chosen from
a_{d-1} down to a_0.  At each stage the next derivative in line must keep
all of its roots real and inside the search box (an exact Sturm check),
and the admissible integer range for the new coefficient comes from weak
alternating sign conditions at the previous derivative's roots and at the
box endpoints.  Those conditions are linear in the new coefficient, which
enters only through the constant term, so the range is an intersection of
half-lines widened outward by the root-enclosure error -- the descent can
prune but can never lose a valid polynomial.

The sieve keeps irreducible, content-one polynomials whose obstruction
value clears the threshold, then drops any whose root range strictly
contains another survivor's (same degree and lead), since the contained
one obstructs every interval the container does.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .balls import Enclosure
from .errors import EmptyRange
from .poly import IntPoly, ObstructionValue, factor
from .realroots import (RatInterval, all_roots_real_in, isolate_roots,
                        real_roots_with_multiplicity, refine)

_RANGE_BOX_WIDTH = Fraction(1, 2 ** 24)
_RECORD_WIDTH = Fraction(1, 10 ** 9)


@dataclass(frozen=True)
class SearchCell:
    """One (degree, lead, box) unit of the search."""

    degree: int
    lead: int
    box: RatInterval

    def __post_init__(self):
        if self.degree < 1 or self.lead < 1:
            raise ValueError("search cell needs degree >= 1 and lead >= 1")


@dataclass(frozen=True)
class ObstructionRecord:
    """A sieved obstruction polynomial with certified root data."""

    poly: IntPoly
    value: ObstructionValue
    span: Enclosure
    root_range: RatInterval

    def translate(self, n: int) -> "ObstructionRecord":
        return ObstructionRecord(self.poly.compose_linear(1, -n), self.value,
                                 self.span, self.root_range.translate(n))

    def to_json_line(self) -> str:
        return json.dumps({
            "coeffs": [str(c) for c in self.poly.coeffs],
            "lead": str(self.poly.lc),
            "degree": self.poly.degree,
            "root_lo": _frac_str(self.root_range.lo),
            "root_hi": _frac_str(self.root_range.hi),
            "span_lo": _frac_str(self.span.lo),
            "span_hi": _frac_str(self.span.hi),
        }, separators=(",", ":"))

    @staticmethod
    def from_json_line(line: str) -> "ObstructionRecord":
        d = json.loads(line)
        poly = IntPoly(int(c) for c in d["coeffs"])
        span = Enclosure.from_endpoints(_parse_frac(d["span_lo"]),
                                        _parse_frac(d["span_hi"]))
        rng = RatInterval(_parse_frac(d["root_lo"]), _parse_frac(d["root_hi"]))
        return ObstructionRecord(poly, ObstructionValue(poly.lc, poly.degree),
                                 span, rng)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# Coefficient descent
# ---------------------------------------------------------------------------

def _derivative_poly(coeffs_from_k: tuple[int, ...], k: int) -> IntPoly:
    """k-th derivative of sum a_j x^j given (a_k, ..., a_d)."""
    out = []
    for off, a in enumerate(coeffs_from_k):
        j = k + off
        out.append(a * (factorial(j) // factorial(j - k)))
    return IntPoly(out)


def coefficient_range(upper: tuple[int, ...], k: int, box: RatInterval) -> tuple[int, int]:
    """Conservative integer range for a_k given fixed a_{k+1}..a_d.

    ``upper`` lists (a_{k+1}, ..., a_d) low-to-high.  The (k+1)-th
    derivative determined by ``upper`` must have all roots real and in the
    box.  Raises EmptyRange when no integer survives.
    """
    d = k + len(upper)
    n = d - k  # degree of the k-th derivative
    dk_upper = _derivative_poly((0,) + upper, k)  # known part, a_k = 0
    fact_k = factorial(k)
    lo, hi = box.lo, box.hi

    lower_bounds: list[Fraction] = []
    upper_bounds: list[Fraction] = []

    def add_condition(sign: int, known_lo: Fraction, known_hi: Fraction):
        # sign * (known + k!*a_k) >= 0, with known anywhere in [known_lo, known_hi]
        if sign > 0:
            lower_bounds.append(Fraction(-known_hi, fact_k))
        else:
            upper_bounds.append(Fraction(-known_lo, fact_k))

    # right endpoint: positive lead means D_k(hi) >= 0
    v = dk_upper(hi)
    add_condition(+1, v, v)
    # left endpoint: sign (-1)^n
    v = dk_upper(lo)
    add_condition(-1 if n % 2 else +1, v, v)
    # alternating weak signs at the roots of the (k+1)-th derivative
    dk1 = _derivative_poly(upper, k + 1)
    if dk1.degree >= 1:
        roots = real_roots_with_multiplicity(dk1)
        flat = []
        for bx, mult in roots:
            flat.extend([bx] * mult)
        m = len(flat)  # equals n-1 when the precondition holds
        for j, bx in enumerate(flat, start=1):
            bx = refine(bx, _RANGE_BOX_WIDTH)
            klo, khi = dk_upper.interval_eval(bx.interval.lo, bx.interval.hi)
            add_condition(-1 if (n - j) % 2 else +1, klo, khi)

    if not lower_bounds or not upper_bounds:
        raise EmptyRange(f"unbounded a_{k} range for prefix {upper}")
    lo_int = math.ceil(max(lower_bounds))
    hi_int = math.floor(min(upper_bounds))
    if lo_int > hi_int:
        raise EmptyRange(f"no admissible a_{k} for prefix {upper}")
    return lo_int, hi_int


def enumerate_cell(cell: SearchCell) -> list[IntPoly]:
    """Every integer polynomial with the cell's degree and lead whose roots
    are all real and inside the cell's box, in deterministic order."""
    d, lead, box = cell.degree, cell.lead, cell.box
    partials: list[tuple[int, ...]] = [(lead,)]
    results: list[IntPoly] = []
    for k in range(d - 1, -1, -1):
        new_partials: list[tuple[int, ...]] = []
        for upper in partials:
            try:
                lo_k, hi_k = coefficient_range(upper, k, box)
            except EmptyRange:
                continue
            for a in range(lo_k, hi_k + 1):
                coeffs = (a,) + upper
                dk = _derivative_poly(coeffs, k)
                if dk.degree != d - k:
                    continue  # leading cancellation cannot happen (lead fixed)
                if not all_roots_real_in(dk, box):
                    continue
                if k == 0:
                    results.append(IntPoly(coeffs))
                else:
                    new_partials.append(coeffs)
        partials = new_partials
    results.sort(key=lambda p: p.coeffs)
    return results


# ---------------------------------------------------------------------------
# Sieve
# ---------------------------------------------------------------------------

def make_record(p: IntPoly, width: Fraction = _RECORD_WIDTH) -> ObstructionRecord:
    """Certified span and root range for an irreducible polynomial."""
    boxes = isolate_roots(p)
    bmin = refine(boxes[0], width / 4)
    bmax = refine(boxes[-1], width / 4)
    span = Enclosure.from_endpoints(bmax.interval.lo - bmin.interval.hi,
                                    bmax.interval.hi - bmin.interval.lo,
                                    prec=96)
    rng = RatInterval(bmin.interval.lo, bmax.interval.hi)
    return ObstructionRecord(p, ObstructionValue(p.lc, p.degree), span, rng)


def _range_strictly_contains(p: IntPoly, q: IntPoly) -> bool:
    """True when p's root range strictly contains q's (p, q coprime)."""
    pmin, pmax = isolate_roots(p)[0], isolate_roots(p)[-1]
    qmin, qmax = isolate_roots(q)[0], isolate_roots(q)[-1]
    width = min(pmin.width, pmax.width, qmin.width, qmax.width, Fraction(1, 2 ** 10))
    while True:
        if pmin.interval.hi < qmin.interval.lo and qmax.interval.hi < pmax.interval.lo:
            return True
        if qmin.interval.hi < pmin.interval.lo or pmax.interval.hi < qmax.interval.lo:
            return False
        width /= 2
        pmin, pmax = refine(pmin, width), refine(pmax, width)
        qmin, qmax = refine(qmin, width), refine(qmax, width)


def sieve(polys, t) -> list[ObstructionRecord]:
    """Keep irreducible, content-one, nonmonic polynomials with obstruction
    value strictly above t; among equal (degree, lead) drop every polynomial
    whose root range strictly contains another survivor's."""
    t = Fraction(t)
    survivors: list[IntPoly] = []
    seen = set()
    for p in polys:
        if p.lc < 0:
            p = -p
        if p.is_zero or p.degree < 1 or p in seen:
            continue
        seen.add(p)
        if p.lc < 2:
            continue
        if p.content() != 1:
            continue
        if not ObstructionValue(p.lc, p.degree) > t:
            continue
        if not factor(p).is_irreducible:
            continue
        survivors.append(p)

    by_class: dict[tuple[int, int], list[IntPoly]] = {}
    for p in survivors:
        by_class.setdefault((p.degree, p.lc), []).append(p)

    kept: list[IntPoly] = []
    for cls in by_class.values():
        for p in cls:
            if any(q is not p and _range_strictly_contains(p, q) for q in cls):
                continue
            kept.append(p)
    kept.sort(key=lambda p: (p.degree, p.lc, p.coeffs))
    return [make_record(p) for p in kept]


# ---------------------------------------------------------------------------
# Search driver
# ---------------------------------------------------------------------------

def search(degrees, box: RatInterval, t, lead_cap=None, threads: int = 1,
           progress=None) -> list[ObstructionRecord]:
    """Run cells (degree ascending, lead descending from 2^d) and sieve.

    Workers own disjoint cells; the merge sorts, so the output does not
    depend on the thread count.
    """
    t = Fraction(t)
    cells = []
    for d in sorted(degrees):
        top = lead_cap if lead_cap is not None else 2 ** d
        for lead in range(top, 1, -1):
            if not ObstructionValue(lead, d) > t:
                continue  # value too small to matter at this threshold
            cells.append(SearchCell(d, lead, box))
    polys: list[IntPoly] = []
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for chunk in ex.map(enumerate_cell, cells):
                polys.extend(chunk)
    else:
        for cell in cells:
            if progress:
                progress(cell)
            polys.extend(enumerate_cell(cell))
    return sieve(polys, t)


def write_records(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json_line() + "\n")


def read_records(path) -> list[ObstructionRecord]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(ObstructionRecord.from_json_line(line))
    return out


def fujiwara_coefficient_box(cell: SearchCell) -> list[tuple[int, int]]:
    """Per-coefficient bounds |a_k| <= lead * C(d, d-k) * B^(d-k) implied by
    all roots lying in the box (used by the brute-force oracle)."""
    d, lead = cell.degree, cell.lead
    bnd = max(abs(cell.box.lo), abs(cell.box.hi))
    out = []
    for k in range(d):
        cap = lead * comb(d, d - k) * bnd ** (d - k)
        cap_int = int(cap) if cap == int(cap) else int(cap) + 1
        out.append((-cap_int, cap_int))
    return out
