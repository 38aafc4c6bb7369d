"""Shipped data: obstruction polynomials, product inputs with their
working intervals, and published reference curves.

Interval endpoints in the data files are decimal or "p/q" strings parsed
to exact rationals; printed interval endpoints are approximations of the
true algebraic boundaries, so certification pipelines treat them as seeds
and recompute certified safe intervals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib.resources import files

from ..cheb import WeightedProduct
from ..poly import IntPoly, ObstructionValue
from ..realroots import RatInterval


def _data_text(name: str) -> str:
    return (files(__package__) / "data" / name).read_text(encoding="utf-8")


def _load(name: str):
    return json.loads(_data_text(name))


def parse_rational(text: str) -> Fraction:
    """Exact rational from 'p/q' or decimal text (no float round trip)."""
    return Fraction(str(text).strip())


def _interval(d: dict) -> RatInterval:
    return RatInterval(parse_rational(d["lo"]), parse_rational(d["hi"]))


def _poly(d: dict) -> IntPoly:
    return IntPoly(int(c) for c in d["coeffs"])


def _product(factor_dicts) -> WeightedProduct:
    if all("exponent" in fd for fd in factor_dicts):
        pairs = [(_poly(fd), int(fd["exponent"])) for fd in factor_dicts]
        return WeightedProduct.from_integer_exponents(pairs)
    pairs = [(_poly(fd), parse_rational(fd["alpha"])) for fd in factor_dicts]
    return WeightedProduct(tuple(pairs))


@dataclass(frozen=True)
class ProductSpec:
    """A shipped product with its seed interval and obstruction polynomial."""

    name: str
    product: WeightedProduct
    seed: RatInterval
    obstruction: IntPoly
    endpoint_range: RatInterval | None = None
    expand_lo: bool = True
    expand_hi: bool = True


def _product_spec(name: str, data: dict, **kw) -> ProductSpec:
    return ProductSpec(name, _product(data["factors"]), _interval(data["interval"]),
                       _poly(data["obstruction"]),
                       _interval(data["endpoint_range"])
                       if "endpoint_range" in data else None, **kw)


# ---------------------------------------------------------------------------
# Obstruction cover proving the L+(1/2) upper bound
# ---------------------------------------------------------------------------

def halfband_threshold() -> Fraction:
    return parse_rational(_load("halfband_obstructions.json")["threshold"])


def halfband_obstructions() -> list[tuple[IntPoly, RatInterval]]:
    """The 22 obstruction polynomials with their printed root ranges."""
    data = _load("halfband_obstructions.json")
    return [(_poly(e), RatInterval(parse_rational(e["printed_range"][0]),
                                   parse_rational(e["printed_range"][1])))
            for e in data["entries"]]


def halfband_cover_records(width: Fraction = Fraction(1, 10 ** 9)):
    """Certified obstruction records for the 22 polynomials, sorted by the
    left end of the (recomputed) root range."""
    from ..robinson import make_record
    recs = [make_record(p, width) for p, _ in halfband_obstructions()]
    recs.sort(key=lambda r: (r.root_range.lo, r.root_range.hi))
    return recs


# ---------------------------------------------------------------------------
# Products certifying sup 1/2 (lower bound for L-(1/2))
# ---------------------------------------------------------------------------

def halfband_products() -> list[ProductSpec]:
    data = _load("halfband_products.json")
    return [_product_spec(f"half-{i}", p)
            for i, p in enumerate(data["products"], start=1)]


def halfband_product_family() -> list[ProductSpec]:
    """The 21-entry system: the ten shipped products, their reflections
    under x -> 1-x, and the first product translated by +1."""
    base = halfband_products()
    out = list(base)
    for i in range(10, 0, -1):
        spec = base[i - 1]
        out.append(ProductSpec(
            f"half-reflect-{i}", spec.product.transform_one_minus_x(),
            spec.seed.reflect_one_minus(),
            _reflect_obstruction(spec.obstruction)))
    first = base[0]
    out.append(ProductSpec("half-translate-1", first.product.translate(1),
                           first.seed.translate(1),
                           first.obstruction.compose_linear(1, -1)))
    return out


def _reflect_obstruction(q: IntPoly) -> IntPoly:
    g = q.one_minus_x()
    return -g if g.lc < 0 else g


# ---------------------------------------------------------------------------
# Span table and published L+ thresholds
# ---------------------------------------------------------------------------

def span_rows() -> list[tuple[IntPoly, ObstructionValue, str]]:
    data = _load("span_table.json")
    return [(_poly(r), ObstructionValue(int(r["base"]), int(r["index"])),
             r["span"]) for r in data["rows"]]


def length_threshold_rows() -> list[tuple[int, int, str]]:
    """(base, index, ell) rows: the published upper-envelope data for L+;
    each says L+(t) < ell for t < base^(-1/index).  Reference data only --
    the underlying covers are beyond desk-scale recomputation."""
    rows = []
    text = _data_text("length_thresholds.csv")
    for line in text.strip().splitlines()[1:]:
        b, d, e = line.split(",")
        rows.append((int(b), int(d), e))
    return rows


# ---------------------------------------------------------------------------
# Individual products
# ---------------------------------------------------------------------------

def quarter_product() -> ProductSpec:
    return _product_spec("quarter", _load("quarter_product.json"),
                         expand_lo=False)


def third_product() -> ProductSpec:
    return _product_spec("third", _load("third_product.json"),
                         expand_lo=False)


def cubic_seven_product() -> ProductSpec:
    return _product_spec("cubic-seven", _load("cubic_seven_product.json"))


def unattainable_witness():
    """(factor, exponent) pairs of the witness product, the candidate
    critical polynomial, and the working interval."""
    data = _load("unattainable_witness.json")
    pairs = [(_poly(fd), int(fd["exponent"])) for fd in data["factors"]]
    return pairs, _poly(data["candidate"]), _interval(data["interval"])
