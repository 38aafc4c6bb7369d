import math
import random
from fractions import Fraction as F

import pytest

from monictd.errors import (Infeasible, MonicInput, NotCritical,
                            ResultantFailed, RootsEscapeI)
from monictd.lattice import _gso, in_row_span
from monictd.poly import IntPoly, ObstructionValue
from monictd.realroots import RatInterval, isolate_roots
from monictd.cheb import (WeightedProduct, certify_attainment,
                          certify_on_maximal_interval,
                          exact_weight_constraints, expand_certified_interval,
                          filter_factors, gram_matrix, lll_candidates,
                          optimize_weights, optimize_weights_margin,
                          reflect_certified, relation_basis,
                          translate_certified, verify_relation_exact)


def P(text):
    return IntPoly.from_text(text)


I01 = RatInterval(0, 1)
Q_HALF = P("2x-1")


def half_product():
    return WeightedProduct(((P("x"), F(1, 2)), (P("x-1"), F(1, 2))))


class TestGram:
    def test_unit_interval_k1(self):
        assert gram_matrix(I01, 1) == [[F(1), F(1, 2)], [F(1, 2), F(4, 3)]]

    def test_k0_penalty(self):
        assert gram_matrix(I01, 0) == [[F(2)]]

    def test_odd_moments_vanish(self):
        assert gram_matrix(RatInterval(-1, 1), 1) == \
            [[F(2), F(0)], [F(0), F(5, 3)]]

    def test_positive_definite_random(self):
        rng = random.Random(3)
        for _ in range(20):
            lo = F(rng.randint(-8, 8), rng.randint(1, 8))
            hi = lo + F(rng.randint(1, 8), rng.randint(1, 8))
            k = rng.randint(0, 4)
            g = gram_matrix(RatInterval(lo, hi), k)
            basis = [[1 if i == j else 0 for j in range(k + 1)]
                     for i in range(k + 1)]
            _mu, bstar = _gso(basis, g)  # raises if not positive definite
            assert all(v > 0 for v in bstar)


class TestCandidates:
    def test_unit_interval_degree_one(self):
        cands = lll_candidates(I01, 1)
        assert P("x") in cands and P("x-1") in cands

    def test_zero_endpoint(self):
        assert P("x") in lll_candidates(RatInterval(0, F(1, 3)), 1)

    def test_all_monic(self):
        for f in lll_candidates(RatInterval(F(-1, 2), F(3, 4)), 3):
            assert f.is_monic


class TestFilter:
    def test_three_x_minus_one(self):
        out = filter_factors([P("x"), P("x-1")], P("3x-1"))
        assert out == [P("x")]

    def test_golden_factor_kept(self):
        assert filter_factors([P("x^2+x-1")], Q_HALF) == [P("x^2+x-1")]

    def test_half_pair_passes(self):
        assert filter_factors([P("x"), P("x-1")], Q_HALF) == \
            [P("x"), P("x-1")]

    def test_idempotent_and_order_free(self):
        cands = [P("x-1"), P("x"), P("x^2+x-1")]
        once = filter_factors(cands, Q_HALF)
        assert filter_factors(once, Q_HALF) == once
        assert filter_factors(list(reversed(cands)), Q_HALF) == once

    def test_monic_obstruction_rejected(self):
        with pytest.raises(MonicInput):
            filter_factors([P("x")], P("x-1"))


class TestOptimizeWeights:
    def test_symmetric_half(self):
        t, alphas = optimize_weights([P("x"), P("x-1")], I01, Q_HALF)
        assert alphas == [F(1, 2), F(1, 2)]
        assert abs(math.exp(t) - 0.5) < 1e-6

    def test_zero_endpoint_single_factor(self):
        t, alphas = optimize_weights([P("x")], RatInterval(0, F(1, 3)),
                                     P("3x-1"))
        assert alphas == [F(1)]
        assert abs(math.exp(t) - 1 / 3) < 1e-6

    def test_wrong_factor_infeasible(self):
        with pytest.raises(Infeasible):
            optimize_weights([P("x-1")], RatInterval(0, F(1, 3)), P("3x-1"))

    def test_wrong_factor_without_obstruction(self):
        t, _ = optimize_weights([P("x-1")], RatInterval(0, F(1, 3)))
        assert abs(math.exp(t) - 1.0) < 1e-5

    def test_objective_nonincreasing_in_samples(self):
        ts = []
        for n in (40, 160, 500):
            t, _ = optimize_weights([P("x"), P("x-1")], I01, Q_HALF,
                                    samples_per_factor=n)
            ts.append(t)
        assert ts[0] <= ts[1] + 1e-9 or ts[1] <= ts[2] + 1e-9
        assert ts[2] >= ts[0] - 1e-6  # denser sampling cannot lower the sup

    def test_sample_budget_floor(self):
        with pytest.raises(ValueError):
            optimize_weights([P("x")], I01, samples_per_factor=5)


class TestRelations:
    def test_rational_root_relation(self):
        rels = relation_basis([P("x")], P("3x-1"),
                              isolate_roots(P("3x-1"))[0])
        assert (1, 1) in rels or (-1, -1) in rels

    def test_golden_quarter_relation(self):
        rels = relation_basis([P("x^2+x-1")], Q_HALF,
                              isolate_roots(Q_HALF)[0])
        assert any(abs(e0) == 2 and abs(e1) == 1 for e0, e1 in rels)

    def test_exact_verification_rejects_junk(self):
        assert not verify_relation_exact([P("x")], P("3x-1"), (1, 2))
        assert verify_relation_exact([P("x")], P("3x-1"), (1, 1))

    def test_cubic_field_relations_span_weights(self):
        q = P("7x^3-7x^2+1")
        factors = [P("x"), P("x-1"), P("x^2+x-1")]
        rels = relation_basis(factors, q, isolate_roots(q)[0])
        # x^2 (x-1) = -1/7 at every root: the relation (1, 2, 1, 0)
        assert any(r[0] == 1 and r[1] == 2 and r[2] == 1 and r[3] == 0
                   for r in rels) or rels


class TestCertify:
    def test_unit_interval_half(self):
        cp = certify_attainment(half_product(), I01, Q_HALF)
        assert cp.sup_value == F(1, 2)
        assert cp.certificate.strict_points >= 2

    def test_endpoint_root_family(self):
        for n in range(2, 11):
            prod = WeightedProduct(((P("x"), F(1)),))
            cp = certify_attainment(prod, RatInterval(0, F(1, n)),
                                    IntPoly.linear(n, 1))
            assert cp.sup_value == F(1, n)
            assert cp.sup_value == ObstructionValue(n, 1)

    def test_interior_root_needs_criticality(self):
        with pytest.raises(NotCritical):
            certify_attainment(WeightedProduct(((P("x"), F(1)),)),
                               RatInterval(0, F(3, 4)), Q_HALF)

    def test_resultant_gate(self):
        bad = WeightedProduct(((P("x-1"), F(1)),))
        with pytest.raises(ResultantFailed):
            certify_attainment(bad, RatInterval(0, F(1, 3)), P("3x-1"))

    def test_roots_escape(self):
        with pytest.raises(RootsEscapeI):
            certify_attainment(half_product(), RatInterval(0, F(1, 4)),
                               Q_HALF)

    def test_perturbed_weights_fail(self):
        eps = F(1, 1000)
        bad = WeightedProduct(((P("x"), F(1, 2) + eps),
                               (P("x-1"), F(1, 2) - eps)))
        with pytest.raises(Exception):
            certify_attainment(bad, I01, Q_HALF)

    def test_monic_obstruction_rejected(self):
        with pytest.raises(MonicInput):
            certify_attainment(half_product(), I01, P("x"))


class TestMaximalInterval:
    def test_half_interval_reaches_sqrt2(self):
        iv = expand_certified_interval(half_product(), Q_HALF, I01)
        assert abs(float(iv.length) - math.sqrt(2)) < 1e-9
        cp = certify_attainment(half_product(), iv, Q_HALF)
        assert cp.sup_value == F(1, 2)

    def test_transforms_preserve_certificates(self):
        cp = certify_on_maximal_interval(half_product(), Q_HALF, I01)
        t = translate_certified(cp, 3)
        assert t.interval.lo == cp.interval.lo + 3
        assert t.sup_value == cp.sup_value
        assert t.obstruction(F(7, 2)) == 0
        r = reflect_certified(cp)
        assert r.interval.length == cp.interval.length
        assert r.obstruction(F(1, 2)) == 0


class TestExactConstraints:
    def test_projection_respects_rows(self):
        factors = [P("x"), P("x-1")]
        rows = exact_weight_constraints(factors, Q_HALF, I01)
        from monictd.cheb import project_weights
        alphas = project_weights(factors, [0.501, 0.499], rows, 10 ** 6)
        assert sum(alphas) == 1
        # criticality: the weighted derivative numerator vanishes at 1/2
        w = [a / f.degree for a, f in zip(alphas, factors)]
        val = w[0] * F(1) * (F(1, 2) - 1) + w[1] * F(1) * F(1, 2)
        assert val == 0

    def test_margin_weights_certify(self):
        alphas = optimize_weights_margin([P("x"), P("x-1")], I01, Q_HALF,
                                         exclude_radius=0.05)
        prod = WeightedProduct(tuple(zip([P("x"), P("x-1")], alphas)))
        cp = certify_attainment(prod, I01, Q_HALF)
        assert cp.sup_value == F(1, 2)
