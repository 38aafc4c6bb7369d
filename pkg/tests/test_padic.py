from fractions import Fraction as F

import pytest

from monictd import fixtures
from monictd.errors import (MonicInput, MultipleCandidates, NoCandidate,
                            QNotDividingR)
from monictd.padic import (attainment_obstruction, critical_witness,
                           identify_maximal_critical)
from monictd.poly import IntPoly, ObstructionValue
from monictd.realroots import RatInterval


def P(text):
    return IntPoly.from_text(text)


class TestAttainment:
    def test_counterexample_rejected(self):
        v = attainment_obstruction(P("7x^3+4x^2-2x-1"))
        assert v.impossible
        assert (7, 1, F(2, 3), 0) in v.failures

    def test_attained_cubic_consistent(self):
        v = attainment_obstruction(P("7x^3-7x^2+1"))
        assert v.status == "consistent"

    def test_squarefree_lead_case(self):
        v = attainment_obstruction(P("4x^2-2x-1"))
        assert v.status == "consistent"

    def test_monic_rejected(self):
        with pytest.raises(MonicInput):
            attainment_obstruction(P("x^2-x-1"))

    def test_linear_family_consistent(self):
        for n in range(2, 12):
            assert attainment_obstruction(IntPoly.linear(n, 1)).status == \
                "consistent"

    def test_fixture_rows_run(self):
        for poly, _rng in fixtures.halfband_obstructions():
            attainment_obstruction(poly)  # no exception

    def test_translation_preserves_status(self):
        base = P("7x^3+4x^2-2x-1")
        shifted = base.compose_linear(1, -3)  # roots moved by +3
        assert attainment_obstruction(shifted).status == \
            attainment_obstruction(base).status


class TestWitness:
    def test_shipped_witness(self):
        pairs, cand, seed = fixtures.unattainable_witness()
        assert critical_witness(pairs, cand, seed) == "critical"
        rec = identify_maximal_critical(pairs, seed)
        assert rec.poly == cand
        assert rec.value == ObstructionValue(7, 3)

    def test_quintic_witness(self):
        r = P("2x-1") * P("x^2-x") ** 2
        assert critical_witness(r, P("2x-1"), RatInterval(0, 1)) == "critical"
        rec = identify_maximal_critical(r, RatInterval(0, 1))
        assert rec.poly == P("2x-1")

    def test_divisibility_gate(self):
        with pytest.raises(QNotDividingR):
            critical_witness(P("x^2-x"), P("2x-1"), RatInterval(0, 1))

    def test_no_candidate(self):
        with pytest.raises(NoCandidate):
            identify_maximal_critical(P("x^3"), RatInterval(0, F(1, 3)))

    def test_value_consistent_with_certified_product(self, half_family):
        # a critical 2x-1 on [0,1] forces every certified product there to
        # sit at or above 1/2; the unit-interval product sits exactly there
        family, _ = half_family
        r = P("2x-1") * P("x^2-x") ** 2
        assert critical_witness(r, P("2x-1"), RatInterval(0, 1)) == "critical"
        for cp in family:
            assert cp.sup_value >= ObstructionValue(2, 1)
