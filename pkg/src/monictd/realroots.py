"""Certified real-root machinery.

Sturm sequences over the integers give exact root counts in closed
rational intervals; bisection with exact sign evaluation refines isolating
intervals to any width.  Endpoint roots are detected exactly and counted
in (closed-interval semantics); rational roots hit by a bisection point
get a small isolating neighbourhood carved around them.

The Sturm chain is computed with a primitive pseudo-remainder sequence so
all coefficients stay integers; dividing by positive contents only keeps
the sign structure of the classical chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .balls import Enclosure
from .errors import ComplexRoots, ZeroPolynomial
from .poly import IntPoly


@dataclass(frozen=True)
class RatInterval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_interior(self, x) -> bool:
        x = Fraction(x)
        return self.lo < x < self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def strictly_contains_interval(self, other: "RatInterval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def intersects(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def translate(self, n) -> "RatInterval":
        n = Fraction(n)
        return RatInterval(self.lo + n, self.hi + n)

    def reflect_one_minus(self) -> "RatInterval":
        """The interval 1 - I."""
        return RatInterval(1 - self.hi, 1 - self.lo)

    def interior_contains_integer(self) -> bool:
        return math.floor(self.lo) + 1 < self.hi

    def __repr__(self):
        return f"RatInterval({self.lo}, {self.hi})"


@dataclass(frozen=True)
class RootBox:
    """Isolating interval for exactly one simple real root of ``poly``."""

    interval: RatInterval
    poly: IntPoly
    sign_left: int
    sign_right: int

    @property
    def width(self) -> Fraction:
        return self.interval.length

    @property
    def midpoint(self) -> Fraction:
        return self.interval.midpoint

    def to_enclosure(self, prec: int = 64) -> Enclosure:
        return Enclosure.from_endpoints(self.interval.lo, self.interval.hi, prec)


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1024)
def sturm_chain(p: IntPoly) -> tuple[IntPoly, ...]:
    """Primitive-integer Sturm chain of a squarefree polynomial."""
    chain = [p, p.derivative().primitive_part()]
    while not chain[-1].is_zero:
        a, b = chain[-2], chain[-1]
        delta = a.degree - b.degree
        r = a.pseudo_rem(b)
        if b.lc ** (delta + 1) < 0:
            r = -r
        chain.append((-r).primitive_part())
    chain.pop()
    return tuple(chain)


def sign_variations(chain, x: Fraction) -> int:
    var = 0
    prev = 0
    for f in chain:
        s = f.sign_at(x)
        if s == 0:
            continue
        if prev and s != prev:
            var += 1
        prev = s
    return var


def _sign_at_infinity(f: IntPoly, positive: bool) -> int:
    if f.is_zero:
        return 0
    s = 1 if f.lc > 0 else -1
    if not positive and f.degree % 2 == 1:
        s = -s
    return s


def _variations_at_infinity(chain, positive: bool) -> int:
    var = 0
    prev = 0
    for f in chain:
        s = _sign_at_infinity(f, positive)
        if s == 0:
            continue
        if prev and s != prev:
            var += 1
        prev = s
    return var


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def count_roots_in(p: IntPoly, interval: RatInterval) -> int:
    """Exact number of distinct real roots of p in the closed interval.

    Roots at rational endpoints are detected exactly and counted in; the
    polynomial is squarefree-reduced internally.
    """
    if p.is_zero:
        raise ZeroPolynomial("root counting on the zero polynomial")
    sf = p.squarefree_part()
    if sf.degree < 1:
        return 0
    lo, hi = interval.lo, interval.hi
    if lo == hi:
        return 1 if sf.sign_at(lo) == 0 else 0
    count = 0
    for r in (lo, hi):
        if sf.degree >= 1 and sf.sign_at(r) == 0:
            count += 1
            sf = sf.exact_div(IntPoly.linear(r.denominator, r.numerator))
    if sf.degree >= 1:
        chain = sturm_chain(sf)
        count += sign_variations(chain, lo) - sign_variations(chain, hi)
    return count


def count_real_roots(p: IntPoly) -> int:
    """Number of distinct real roots over the whole line."""
    if p.is_zero:
        raise ZeroPolynomial("root counting on the zero polynomial")
    sf = p.squarefree_part()
    if sf.degree < 1:
        return 0
    chain = sturm_chain(sf)
    return (_variations_at_infinity(chain, positive=False)
            - _variations_at_infinity(chain, positive=True))


def all_roots_real_in(p: IntPoly, interval: RatInterval) -> bool:
    """True when every root of p (hence all, with multiplicity) lies in
    the closed interval and is real."""
    sf = p.squarefree_part()
    if sf.degree < 1:
        return True
    return count_roots_in(sf, interval) == sf.degree


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------

def cauchy_root_bound(p: IntPoly) -> Fraction:
    """A rational B with every complex root strictly inside |z| < B."""
    if p.degree < 1:
        raise ZeroPolynomial("root bound of a constant")
    top = max(abs(a) for a in p.coeffs[:-1]) if p.degree >= 1 else 0
    return 2 + Fraction(top, abs(p.lc))


def isolate_roots(p: IntPoly) -> list[RootBox]:
    """Disjoint isolating intervals for all distinct real roots, increasing."""
    if p.is_zero:
        raise ZeroPolynomial("isolation on the zero polynomial")
    if p.degree < 1:
        raise ValueError("isolation needs a nonconstant polynomial")
    sf = p.squarefree_part()
    bound = cauchy_root_bound(sf)
    chain = sturm_chain(sf)
    out: list[RootBox] = []
    total = sign_variations(chain, -bound) - sign_variations(chain, bound)
    _bisect_isolate(sf, chain, -bound, bound, total, out)
    return out


def _bisect_isolate(sf, chain, a, b, cnt, out):
    if cnt == 0:
        return
    if cnt == 1:
        out.append(RootBox(RatInterval(a, b), sf, sf.sign_at(a), sf.sign_at(b)))
        return
    mid = (a + b) / 2
    if sf.sign_at(mid) == 0:
        eps = (b - a) / 4
        while True:
            l2, h2 = mid - eps, mid + eps
            if (sf.sign_at(l2) != 0 and sf.sign_at(h2) != 0
                    and sign_variations(chain, l2) - sign_variations(chain, h2) == 1):
                break
            eps /= 2
        left_cnt = sign_variations(chain, a) - sign_variations(chain, l2)
        right_cnt = sign_variations(chain, h2) - sign_variations(chain, b)
        _bisect_isolate(sf, chain, a, l2, left_cnt, out)
        out.append(RootBox(RatInterval(l2, h2), sf, sf.sign_at(l2), sf.sign_at(h2)))
        _bisect_isolate(sf, chain, h2, b, right_cnt, out)
    else:
        va, vm, vb = (sign_variations(chain, a), sign_variations(chain, mid),
                      sign_variations(chain, b))
        _bisect_isolate(sf, chain, a, mid, va - vm, out)
        _bisect_isolate(sf, chain, mid, b, vm - vb, out)


def refine(box: RootBox, eps) -> RootBox:
    """Shrink an isolating interval to width <= eps by exact-sign bisection."""
    eps = Fraction(eps)
    lo, hi = box.interval.lo, box.interval.hi
    sl, sr = box.sign_left, box.sign_right
    p = box.poly
    while hi - lo > eps:
        mid = (lo + hi) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            delta = min(eps, hi - lo) / 4
            l2, h2 = mid - delta, mid + delta
            return RootBox(RatInterval(l2, h2), p, p.sign_at(l2), p.sign_at(h2))
        if sm == sl:
            lo = mid
        else:
            hi = mid
    return RootBox(RatInterval(lo, hi), p, sl, sr)


def isolate_roots_in(p: IntPoly, interval: RatInterval) -> list[RootBox]:
    """Isolating boxes for the distinct real roots of p lying in the closed
    interval, in increasing order.

    Boxes around roots at the interval's rational endpoints may stick out
    of the interval slightly; the isolated root itself is always inside.
    """
    if p.is_zero:
        raise ZeroPolynomial("isolation on the zero polynomial")
    sf = p.squarefree_part()
    if sf.degree < 1:
        return []
    lo, hi = interval.lo, interval.hi
    endpoint_boxes = []
    endpoints = (lo,) if lo == hi else (lo, hi)
    for r in endpoints:
        if sf.degree >= 1 and sf.sign_at(r) == 0:
            sf_def = sf.exact_div(IntPoly.linear(r.denominator, r.numerator))
            eps = Fraction(1, 16)
            while (sf.sign_at(r - eps) == 0 or sf.sign_at(r + eps) == 0
                   or count_roots_in(sf, RatInterval(r - eps, r + eps)) != 1):
                eps /= 2
            endpoint_boxes.append(
                RootBox(RatInterval(r - eps, r + eps), sf,
                        sf.sign_at(r - eps), sf.sign_at(r + eps)))
            sf = sf_def
    out = list(endpoint_boxes)
    if sf.degree >= 1 and lo != hi:
        for box in isolate_roots(sf):
            b = box
            while True:
                if b.interval.lo > lo and b.interval.hi < hi:
                    out.append(b)
                    break
                if b.interval.hi < lo or b.interval.lo > hi:
                    break
                b = refine(b, b.width / 4)
    out.sort(key=lambda b: (b.interval.lo, b.interval.hi))
    return _disjoint_sorted(out)


def _disjoint_sorted(boxes: list[RootBox]) -> list[RootBox]:
    """Refine boxes (isolating pairwise-distinct roots) until disjoint."""
    boxes = list(boxes)
    changed = True
    while changed:
        changed = False
        boxes.sort(key=lambda b: (b.interval.lo, b.interval.hi))
        for i in range(len(boxes) - 1):
            a, b = boxes[i], boxes[i + 1]
            if a.interval.intersects(b.interval):
                boxes[i] = refine(a, a.width / 4)
                boxes[i + 1] = refine(b, b.width / 4)
                changed = True
    boxes.sort(key=lambda b: (b.interval.lo, b.interval.hi))
    return boxes


def real_roots_with_multiplicity(p: IntPoly) -> list[tuple[RootBox, int]]:
    """All distinct real roots with multiplicities, sorted increasing,
    with pairwise disjoint boxes."""
    if p.is_zero:
        raise ZeroPolynomial("roots of the zero polynomial")
    items: list[tuple[RootBox, int]] = []
    for g, mult in p.squarefree_decomposition():
        if g.degree < 1:
            continue
        for box in isolate_roots(g):
            items.append((box, mult))
    if not items:
        return []
    changed = True
    while changed:
        changed = False
        items.sort(key=lambda bm: (bm[0].interval.lo, bm[0].interval.hi))
        for i in range(len(items) - 1):
            a, b = items[i][0], items[i + 1][0]
            if a.interval.intersects(b.interval):
                items[i] = (refine(a, a.width / 4), items[i][1])
                items[i + 1] = (refine(b, b.width / 4), items[i + 1][1])
                changed = True
    items.sort(key=lambda bm: (bm[0].interval.lo, bm[0].interval.hi))
    return items


# ---------------------------------------------------------------------------
# Spans and ball evaluation
# ---------------------------------------------------------------------------

def root_span(p: IntPoly, width: Fraction = Fraction(1, 10 ** 12)) -> Enclosure:
    """Outward enclosure of (max real root - min real root).

    Requires every root of p to be real; raises ComplexRoots otherwise.
    """
    if p.is_zero:
        raise ZeroPolynomial("span of the zero polynomial")
    if p.degree < 1:
        raise ValueError("span needs a nonconstant polynomial")
    width = Fraction(width)
    sf = p.squarefree_part()
    boxes = isolate_roots(sf)
    if len(boxes) != sf.degree:
        raise ComplexRoots(f"{p!r} has nonreal roots")
    prec = max(64, _frac_bits(width) + 32)
    if len(boxes) == 1:
        return Enclosure.exact(0, prec)
    bmin = refine(boxes[0], width / 4)
    bmax = refine(boxes[-1], width / 4)
    return Enclosure.from_endpoints(bmax.interval.lo - bmin.interval.hi,
                                    bmax.interval.hi - bmin.interval.lo, prec)


def _frac_bits(width: Fraction) -> int:
    """Bits needed to resolve quantities at scale ``width``."""
    return max(0, width.denominator.bit_length() - width.numerator.bit_length())


def eval_ball(p: IntPoly, x: Enclosure) -> Enclosure:
    """Enclosure of p over the input ball (Horner with outward rounding)."""
    acc = Enclosure.exact(0, x.prec)
    for a in reversed(p.coeffs):
        acc = acc * x + a
    return acc
