"""Command-line front end.

Subcommands
-----------
search   enumerate obstruction polynomials over a box and sieve them
verify   certify a product file (sup value on its certified interval)
bounds   emit the envelope CSV of certified L-/L+ bounds
farey    maximal obstruction / exact value for a rational interval
padic    attainment possibility verdict for a nonmonic polynomial
gamma    factor-exponent lower-bound curve CSV
tables   re-certify every shipped fixture

Exit codes: 0 success, 2 input error, 3 negative verdict, 4 precision cap.
Outputs are deterministic: identical bytes across runs and thread counts.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .balls import format_directed
from .errors import (MonictdError, ParseError, StrictMaxUndecided,
                     SupExceedsM, Undecided)
from .poly import IntPoly
from .realroots import RatInterval

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NEGATIVE = 3
EXIT_PRECISION = 4


def parse_poly(text: str) -> IntPoly:
    """Canonical polynomial from term syntax or JSON; round-trips through
    the printer."""
    return IntPoly.from_text(text)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from exc


@dataclass
class RunConfig:
    """Parsed command-line configuration."""

    subcommand: str
    interval: RatInterval | None = None
    poly: IntPoly | None = None
    product_path: str | None = None
    degree: int = 4
    lead: int | None = None
    threshold: Fraction = Fraction(1, 2)
    precision: int = 4096
    threads: int = 1
    out: str | None = None
    db: str | None = None
    certify_products: bool = False
    published: bool = False
    limit: int = 50
    b_value: Fraction | None = None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monictd",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--precision", type=int, default=4096,
                       help="precision cap in bits")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("search", help="enumerate and sieve obstruction polynomials")
    p.add_argument("--interval", nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--degree", type=int, default=4, help="max degree (>=1)")
    p.add_argument("--lead", type=int, help="max lead (default 2^degree)")
    p.add_argument("--t", default="1/2", help="obstruction threshold P/Q")
    p.add_argument("--db", help="write the record database here")
    add_common(p)

    p = sub.add_parser("verify", help="certify a product file")
    p.add_argument("--product", required=True, help="product JSON path")
    add_common(p)

    p = sub.add_parser("bounds", help="emit the bounds envelope CSV")
    p.add_argument("--db", help="extra obstruction record database (JSONL)")
    p.add_argument("--certify-products", action="store_true",
                   help="run the product certification suite for the "
                        "lower bounds (slower)")
    p.add_argument("--published", action="store_true",
                   help="also emit the published reference thresholds CSV")
    add_common(p)

    p = sub.add_parser("farey", help="maximal obstruction of an interval")
    p.add_argument("--interval", nargs=2, required=True, metavar=("LO", "HI"))
    add_common(p)

    p = sub.add_parser("padic", help="attainment possibility verdict")
    p.add_argument("--poly", required=True)
    add_common(p)

    p = sub.add_parser("gamma", help="factor-exponent lower-bound curve")
    p.add_argument("--b", help="single abscissa (default: grid)")
    add_common(p)

    p = sub.add_parser("tables", help="re-certify the shipped fixtures")
    add_common(p)
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    cfg.precision = getattr(args, "precision", 4096)
    cfg.threads = getattr(args, "threads", 1)
    cfg.out = getattr(args, "out", None)
    if getattr(args, "interval", None):
        lo, hi = (parse_rational(x) for x in args.interval)
        cfg.interval = RatInterval(lo, hi)
    if getattr(args, "poly", None):
        cfg.poly = parse_poly(args.poly)
    cfg.product_path = getattr(args, "product", None)
    cfg.degree = getattr(args, "degree", 4)
    cfg.lead = getattr(args, "lead", None)
    if getattr(args, "t", None):
        cfg.threshold = parse_rational(args.t)
    cfg.db = getattr(args, "db", None)
    cfg.certify_products = getattr(args, "certify_products", False)
    cfg.published = getattr(args, "published", False)
    if getattr(args, "b", None):
        cfg.b_value = parse_rational(args.b)
    return cfg


def _out_stream(cfg: RunConfig):
    if cfg.out:
        return open(cfg.out, "w", encoding="utf-8")
    return sys.stdout


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_search(cfg: RunConfig) -> int:
    from .robinson import search, write_records
    if cfg.interval is None:
        raise ParseError("search needs --interval")
    records = search(range(1, cfg.degree + 1), cfg.interval, cfg.threshold,
                     lead_cap=cfg.lead, threads=cfg.threads)
    lines = [rec.to_json_line() for rec in records]
    if cfg.db:
        with open(cfg.db, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
    stream = _out_stream(cfg)
    try:
        for line in lines:
            stream.write(line + "\n")
        stream.write(f"# {len(lines)} records\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def _load_product_file(path):
    from .cheb import WeightedProduct
    from .fixtures import parse_rational as pr
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    factors = data["factors"]
    if all("exponent" in fd for fd in factors):
        pairs = [(IntPoly(int(c) for c in fd["coeffs"]), int(fd["exponent"]))
                 for fd in factors]
        product = WeightedProduct.from_integer_exponents(pairs)
    else:
        product = WeightedProduct(tuple(
            (IntPoly(int(c) for c in fd["coeffs"]), Fraction(fd["alpha"]))
            for fd in factors))
    seed = RatInterval(pr(data["interval"]["lo"]), pr(data["interval"]["hi"]))
    q = IntPoly(int(c) for c in data["obstruction"]["coeffs"])
    pinned_lo = "endpoint_range" in data
    return product, seed, q, pinned_lo


def cmd_verify(cfg: RunConfig) -> int:
    from .cheb import certify_on_maximal_interval
    product, seed, q, pinned_lo = _load_product_file(cfg.product_path)
    cp = certify_on_maximal_interval(product, q, seed,
                                     expand_lo=not pinned_lo)
    frac = cp.sup_value.as_fraction()
    shown = str(frac) if frac is not None else repr(cp.sup_value)
    stream = _out_stream(cfg)
    try:
        stream.write(f"sup_value = {shown} certified on "
                     f"[{cp.interval.lo}, {cp.interval.hi}]\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    from . import fixtures
    from .bounds import (cover_from_records, cover_from_products,
                         cover_min_gap, default_grid, envelope,
                         write_envelope_csv)
    from .robinson import make_record, read_records
    records = [make_record(p) for p, _ in fixtures.halfband_obstructions()]
    records += [make_record(p) for p, _v, _s in fixtures.span_rows()]
    if cfg.db:
        records += read_records(cfg.db)
    covers = [cover_from_records(fixtures.halfband_cover_records())]
    products = []
    min_gap = None
    if cfg.certify_products:
        from .cheb import certify_on_maximal_interval, reflect_certified, \
            translate_certified
        base = []
        for spec in fixtures.halfband_products():
            base.append(certify_on_maximal_interval(
                spec.product, spec.obstruction, spec.seed))
        family = list(base) + [reflect_certified(cp) for cp in reversed(base)]
        cover = cover_from_products(family)
        min_gap = cover_min_gap(cover, Fraction(1, 2)).lo
        products = [w for _iv, w in cover.entries]
    pts = envelope(default_grid(), records=records, products=products,
                   covers=covers, min_gap=min_gap)
    out = cfg.out or "envelope.csv"
    write_envelope_csv(pts, out)
    print(f"wrote {len(pts)} grid points to {out}")
    if cfg.published:
        ref = out + ".published.csv"
        with open(ref, "w", encoding="utf-8") as fh:
            fh.write("base,index,ell\n")
            for b, d, e in fixtures.length_threshold_rows():
                fh.write(f"{b},{d},{e}\n")
        print(f"wrote published reference thresholds to {ref}")
    return EXIT_OK


def cmd_farey(cfg: RunConfig) -> int:
    from .special import (FareyInterval, farey_conjecture_check,
                          farey_max_obstruction, minimal_farey_interval)
    if cfg.interval is None:
        raise ParseError("farey needs --interval")
    verdict = farey_max_obstruction(cfg.interval)
    f = minimal_farey_interval(cfg.interval)
    status = "conjectured-maximal-obstruction"
    value = verdict.value
    if verdict.case_tag == "full-farey":
        check = farey_conjecture_check(f)
        if check.status == "proved":
            status = "proved"
            value = check.value
    stream = _out_stream(cfg)
    try:
        stream.write(f"t_M([{f.b1}/{f.c1}, {f.b2}/{f.c2}]) = "
                     f"{value} ({status})\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def cmd_padic(cfg: RunConfig) -> int:
    from .padic import attainment_obstruction
    verdict = attainment_obstruction(cfg.poly)
    payload = {
        "status": verdict.status,
        "gcd_failure": verdict.gcd_failure,
        "failures": [
            {"prime": p, "index": i, "required": f"{r.numerator}/{r.denominator}",
             "actual": ("inf" if a == float("inf") else int(a))}
            for p, i, r, a in verdict.failures
        ],
    }
    stream = _out_stream(cfg)
    try:
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_NEGATIVE if verdict.impossible else EXIT_OK


def cmd_gamma(cfg: RunConfig) -> int:
    from .errors import NoRoot
    from .special import gamma_lower
    if cfg.b_value is not None:
        bs = [cfg.b_value]
    else:
        bs = [Fraction(k, 100) for k in range(1, 26)]
    stream = _out_stream(cfg)
    try:
        stream.write("b,gamma_lo\n")
        for b in bs:
            try:
                g = gamma_lower(b, b)
                stream.write(f"{format_directed(b, 10, up=False)},"
                             f"{format_directed(g.lo, 10, up=False)}\n")
            except (NoRoot, Undecided):
                stream.write(f"{format_directed(b, 10, up=False)},\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return EXIT_OK


def cmd_tables(cfg: RunConfig) -> int:
    """Re-certify every shipped fixture; one line per item."""
    from fractions import Fraction as F

    from . import fixtures
    from .bounds import cover_from_records, cover_max_gap_detail
    from .cheb import certify_on_maximal_interval
    from .padic import critical_witness, identify_maximal_critical
    from .realroots import root_span

    failures = 0

    def report(name, ok, detail=""):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
        if not ok:
            failures += 1

    for poly, value, span_text in fixtures.span_rows():
        enc = root_span(poly, F(1, 10 ** 9))
        printed = F(span_text)
        ok = abs(enc.center - printed) <= F(1, 10 ** 6)
        report(f"span {poly.to_text()}", ok, f"= {float(enc.center):.9f}")

    cover = cover_from_records(fixtures.halfband_cover_records())
    m, idx = cover_max_gap_detail(cover, F(1, 2))
    ok = F("1.471") <= m <= F("1.4720")
    report("halfband cover max gap", ok, f"M = {float(m):.6f}")

    for spec in (fixtures.quarter_product(), fixtures.third_product(),
                 fixtures.cubic_seven_product()):
        cp = certify_on_maximal_interval(spec.product, spec.obstruction,
                                         spec.seed, expand_lo=spec.expand_lo,
                                         expand_hi=spec.expand_hi)
        frac = cp.sup_value.as_fraction()
        report(f"product {spec.name}", True,
               f"sup = {frac if frac is not None else cp.sup_value!r}")

    for spec in fixtures.halfband_products():
        cp = certify_on_maximal_interval(spec.product, spec.obstruction,
                                         spec.seed)
        report(f"product {spec.name}", cp.sup_value == F(1, 2),
               f"[{float(cp.interval.lo):.6f}, {float(cp.interval.hi):.6f}]")

    pairs, cand, seed = fixtures.unattainable_witness()
    verdict = critical_witness(pairs, cand, seed)
    report("witness criticality", verdict == "critical")
    rec = identify_maximal_critical(pairs, seed)
    report("witness maximal candidate", rec.poly == cand,
           rec.poly.to_text())

    rows = fixtures.length_threshold_rows()
    ok = all(F(rows[i][2]) <= F(rows[i + 1][2]) for i in range(len(rows) - 1))
    report("published thresholds monotone", ok, f"{len(rows)} rows")
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


_COMMANDS = {
    "search": cmd_search,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "farey": cmd_farey,
    "padic": cmd_padic,
    "gamma": cmd_gamma,
    "tables": cmd_tables,
}


def run(cfg: RunConfig) -> int:
    """Dispatch a parsed configuration; returns the exit code."""
    return _COMMANDS[cfg.subcommand](cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (StrictMaxUndecided, Undecided) as exc:
        print(f"undecided at the precision cap: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except SupExceedsM as exc:
        print(f"negative verdict: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except MonictdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
