import math
from fractions import Fraction as F

import pytest

from monictd import fixtures
from monictd.balls import Enclosure
from monictd.bounds import (BoundPoint, CoverSystem, alpha_for_threshold,
                            alpha_star, cover_from_records, cover_max_gap,
                            cover_max_gap_detail, cover_min_gap, ell_alpha,
                            envelope, lminus_upper, lplus_lower,
                            tm_unit_interval, write_envelope_csv)
from monictd.errors import (AlphaOutOfRange, MissingTranslateClosure,
                            NotCertified, ValueNotAboveT)
from monictd.poly import IntPoly, ObstructionValue
from monictd.realroots import RatInterval
from monictd.robinson import ObstructionRecord, make_record


def P(text):
    return IntPoly.from_text(text)


def fake_record(poly_text, lo, hi):
    p = P(poly_text)
    return ObstructionRecord(p, ObstructionValue(p.lc, p.degree),
                             Enclosure.exact(F(hi) - F(lo), 96),
                             RatInterval(F(lo), F(hi)))


class TestElementary:
    def test_lminus_upper_values(self):
        rec = make_record(P("7x^3+7x^2-1"))
        enc = lminus_upper(rec, F(1, 2))
        assert abs(float(enc.center) - 1.064961507) < 1e-8
        rec = make_record(P("5x^3+3x^2-2x-1"))
        enc = lminus_upper(rec, F(58, 100))
        assert abs(float(enc.center) - 1.390656045) < 1e-8

    def test_value_not_above(self):
        rec = make_record(P("3x^2-1"))
        with pytest.raises(ValueNotAboveT):
            lminus_upper(rec, F(6, 10))

    def test_cover_max_gap_simple(self):
        entries = ((RatInterval(0, F(6, 10)), fake_record("3x^2-1", 0, "0.6")),
                   (RatInterval(1, F(16, 10)), fake_record("3x^2-1", 1, "1.6")))
        cov = CoverSystem(entries)
        assert cover_max_gap(cov, F(1, 2)).contains(F(16, 10))

    def test_translate_closure_required(self):
        entries = ((RatInterval(0, F(6, 10)), fake_record("3x^2-1", 0, "0.6")),
                   (RatInterval(F(3, 2), 2), fake_record("3x^2-1", "1.5", 2)))
        with pytest.raises(MissingTranslateClosure):
            CoverSystem(entries)

    def test_cover_min_gap_simple(self, half_family):
        family, _ = half_family
        base = family[0]
        from monictd.cheb import CertifiedProduct
        entries = []
        for lo, hi in ((0, F(7, 10)), (F(1, 2), F(12, 10)), (1, F(17, 10))):
            iv = RatInterval(lo, hi)
            wit = CertifiedProduct(base.product, iv, base.obstruction,
                                   base.sup_value, base.certificate)
            entries.append((iv, wit))
        m = cover_min_gap(CoverSystem(tuple(entries)), F(1, 2))
        assert m.contains(F(2, 10))

    def test_min_gap_needs_products(self):
        entries = ((RatInterval(0, F(6, 10)), fake_record("3x^2-1", 0, "0.6")),
                   (RatInterval(1, F(16, 10)), fake_record("3x^2-1", 1, "1.6")))
        with pytest.raises(NotCertified):
            cover_min_gap(CoverSystem(entries), F(1, 2))

    def test_lplus_lower(self, half_family):
        family, _ = half_family
        enc = lplus_lower(family[0])
        assert enc.contains(family[0].interval.length)
        with pytest.raises(NotCertified):
            lplus_lower("not a product")


class TestCovers:
    def test_shipped_cover_band(self, obstruction_cover):
        m, idx = cover_max_gap_detail(obstruction_cover, F(1, 2))
        assert F("1.471") <= m <= F("1.4720")
        assert m < F("1.4715")

    def test_translation_invariance(self):
        recs = fixtures.halfband_cover_records()
        shifted = [r.translate(5) for r in recs]
        m1, _ = cover_max_gap_detail(cover_from_records(recs), F(1, 2))
        m2, _ = cover_max_gap_detail(cover_from_records(shifted), F(1, 2))
        assert m1 == m2


class TestParametricCurve:
    def test_alpha_star_value(self):
        enc = alpha_star()
        assert abs(float(enc.center) - 0.4358) < 5e-4
        # defining equation residual at the midpoint
        a = enc.center
        residual = 4 * float(a) ** float(a) * (1 - float(a)) ** (1 - float(a)) \
            - 5 ** float(a)
        assert abs(residual) < 1e-5

    def test_ell_examples(self):
        assert abs(float(ell_alpha(F(1, 2)).center) - 2.449) < 5e-3
        assert abs(float(ell_alpha(F(35, 100)).center) - 1.559) < 5e-3
        assert abs(float(ell_alpha(F(0)).center) - math.sqrt(2)) < 1e-6

    def test_branch_jump(self):
        lo_side = ell_alpha(F(4348, 10000))
        hi_side = ell_alpha(F(4368, 10000))
        s5 = math.sqrt(5)
        assert float(lo_side.hi) <= s5 + 1e-6
        assert float(hi_side.lo) >= s5 - 1e-6

    def test_alpha_range(self):
        with pytest.raises(AlphaOutOfRange):
            ell_alpha(F(9, 10))
        with pytest.raises(AlphaOutOfRange):
            ell_alpha(F(-1, 10))

    def test_alpha_for_threshold_admissible(self):
        for t in (F(1, 2), F(6, 10), F(3, 4), F(99, 100)):
            a = alpha_for_threshold(t)
            p, q = a.numerator, a.denominator
            # 5^(a/2)/2 <= t exactly
            assert 5 ** p * t.denominator ** (2 * q) <= \
                (2 * t.numerator) ** (2 * q)


class TestEnvelope:
    def test_clamps(self, obstruction_cover):
        records = [make_record(p) for p, _v, _s in fixtures.span_rows()]
        pts = envelope([F(3, 10), F(1, 2), F(1), F(11, 10), F(5, 4)],
                       records=records, covers=[obstruction_cover])
        by_t = {p.t: p for p in pts}
        for t in (F(1), F(11, 10), F(5, 4)):
            p = by_t[t]
            for enc in (p.lminus_lo, p.lminus_hi, p.lplus_lo, p.lplus_hi):
                assert enc.contains(4 * t) and float(enc.width) < 1e-20
        for t in (F(3, 10), F(1, 2)):
            p = by_t[t]
            assert p.lminus_lo.center == 0 and p.lminus_hi.center == 0

    def test_half_point_bounds(self, obstruction_cover):
        records = [make_record(p) for p, _v, _s in fixtures.span_rows()]
        pts = envelope([F(1, 2)], records=records, covers=[obstruction_cover])
        p = pts[0]
        assert p.lplus_lo.lo >= F(141421, 100000)
        assert p.lplus_hi.hi <= F(14715, 10000)

    def test_monotone_and_consistent(self, obstruction_cover):
        records = [make_record(p) for p, _v, _s in fixtures.span_rows()]
        grid = [F(k, 100) for k in range(50, 101, 5)] + [F(11, 10)]
        pts = envelope(grid, records=records, covers=[obstruction_cover])
        prev_hi = None
        for p in pts:
            if p.lminus_hi is not None and p.lplus_hi is not None:
                assert p.lminus_hi.hi <= p.lplus_hi.hi + F(1, 10 ** 12)
            if p.lminus_lo is not None and p.lplus_lo is not None:
                assert p.lminus_lo.lo <= p.lplus_lo.lo + F(1, 10 ** 12)
            if p.lminus_hi is not None:
                if prev_hi is not None:
                    assert prev_hi <= p.lminus_hi.hi + F(1, 10 ** 12)
                prev_hi = p.lminus_hi.hi

    def test_csv_shape(self, tmp_path, obstruction_cover):
        records = [make_record(p) for p, _v, _s in fixtures.span_rows()]
        pts = envelope([F(1, 2), F(3, 4)], records=records,
                       covers=[obstruction_cover])
        out = tmp_path / "env.csv"
        write_envelope_csv(pts, out)
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "t,lminus_lo,lminus_hi,lplus_lo,lplus_hi"
        assert len(lines) == 3


class TestUnitIntervals:
    def test_exact_half(self, half_cover):
        m = cover_min_gap(half_cover, F(1, 2)).lo
        assert m > F(1008848, 1000000)
        assert tm_unit_interval(RatInterval(F(-1, 3), F(2, 3)), half_cover,
                                min_gap=m) == F(1, 2)

    def test_too_long_rejected(self, half_cover):
        with pytest.raises(ValueError):
            tm_unit_interval(RatInterval(0, F(3, 2)), half_cover)
