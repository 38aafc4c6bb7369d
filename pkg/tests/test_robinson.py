import random
from fractions import Fraction as F

import pytest

from monictd.errors import EmptyRange
from monictd.poly import IntPoly, ObstructionValue
from monictd.realroots import RatInterval
from monictd.robinson import (ObstructionRecord, SearchCell,
                              coefficient_range, enumerate_cell, make_record,
                              read_records, search, sieve, write_records)
from oracles import brute_force_cell


def P(text):
    return IntPoly.from_text(text)


class TestCoefficientRange:
    def test_linear_root_condition(self):
        # 2x + a0 with root -a0/2 in [0,1]
        assert coefficient_range((2,), 0, RatInterval(0, 1)) == (-2, 0)

    def test_derivative_stage(self):
        # 6x + a1 root in [-0.6, 0.6] means |a1| <= 3.6
        lo, hi = coefficient_range((3,), 1, RatInterval(F(-3, 5), F(3, 5)))
        assert (lo, hi) == (-3, 3)

    def test_final_stage_contains_answer(self):
        lo, hi = coefficient_range((0, 3), 0, RatInterval(F(-3, 5), F(3, 5)))
        assert lo <= -1 <= hi and lo <= 0 <= hi

    def test_empty_branch_prunes(self):
        # monic quadratic with both roots in [0.1, 0.2] needs a fractional a_1
        with pytest.raises(EmptyRange):
            coefficient_range((1,), 1, RatInterval(F(1, 10), F(2, 10)))


class TestEnumerate:
    def test_linear_cell(self):
        cell = SearchCell(1, 2, RatInterval(0, 1))
        assert [p.to_text() for p in enumerate_cell(cell)] == \
            ["2x-2", "2x-1", "2x"]

    def test_contains_sqrt3_poly(self):
        cell = SearchCell(2, 3, RatInterval(F(-3, 5), F(3, 5)))
        assert P("3x^2-1") in enumerate_cell(cell)

    def test_degree3_lead7(self):
        cell = SearchCell(3, 7, RatInterval(F(-3, 4), F(3, 4)))
        out = enumerate_cell(cell)
        for want in ("7x^3+7x^2-1", "7x^3+4x^2-2x-1",
                     "7x^3-4x^2-2x+1", "7x^3-7x^2+1"):
            assert P(want) in out

    def test_oracle_equivalence_small(self):
        # pruning-free brute force over the root-bound coefficient box
        for d in (1, 2):
            for lead in range(1, 6):
                cell = SearchCell(d, lead, RatInterval(-1, 1))
                assert enumerate_cell(cell) == brute_force_cell(cell), (d, lead)


class TestSieve:
    def test_reducible_dropped(self):
        recs = sieve([P("6x^2-5x+1"), P("3x^2-1")], F(1, 2))
        assert [r.poly for r in recs] == [P("3x^2-1")]
        assert recs[0].value == ObstructionValue(3, 2)

    def test_strict_threshold(self):
        assert sieve([P("2x-1")], F(1, 2)) == []
        assert [r.poly for r in sieve([P("2x-1")], F(2, 5))] == [P("2x-1")]

    def test_content_dropped(self):
        recs = sieve([P("2x"), P("2x-2"), P("2x-1")], F(2, 5))
        assert [r.poly for r in recs] == [P("2x-1")]

    def test_dominated_span_dropped(self):
        # among same degree and lead, a root range strictly containing
        # another survivor's is redundant
        wide = P("2x^2-x-2")    # roots ~ -0.781, 1.281
        tight = P("2x^2-1")     # roots +-0.707, strictly inside
        recs = sieve([wide, tight], F(1, 2))
        assert [r.poly for r in recs] == [tight]

    def test_incomparable_spans_both_kept(self):
        a = P("2x^2-2x-1")      # roots ~ -0.366, 1.366
        b = P("2x^2-1")         # roots +-0.707: neither contains the other
        kept = [r.poly for r in sieve([a, b], F(1, 2))]
        assert a in kept and b in kept

    def test_fixture_rows_all_survive(self):
        from monictd import fixtures
        polys = [p for p, _ in fixtures.halfband_obstructions()]
        recs = sieve(polys, F(1, 2))
        assert len(recs) == 22


class TestRecords:
    def test_json_round_trip(self, tmp_path):
        recs = [make_record(P("7x^3-7x^2+1")), make_record(P("3x^2-1"))]
        path = tmp_path / "db.jsonl"
        write_records(recs, path)
        back = read_records(path)
        assert [r.poly for r in back] == [r.poly for r in recs]
        assert back[0].root_range == recs[0].root_range

    def test_translate(self):
        rec = make_record(P("3x^2-1"))
        t = rec.translate(1)
        assert t.root_range.lo == rec.root_range.lo + 1
        assert t.poly(F(1)) == rec.poly(F(0))


class TestSearchDriver:
    def test_thread_determinism(self):
        box = RatInterval(F(-3, 5), F(3, 5))
        a = search([1, 2], box, F(1, 2), threads=1)
        b = search([1, 2], box, F(1, 2), threads=3)
        assert [r.to_json_line() for r in a] == [r.to_json_line() for r in b]
