import random
from fractions import Fraction as F

import pytest

from monictd.errors import ParseError, ZeroPolynomial
from monictd.poly import (IntPoly, ObstructionValue, factor, is_irreducible,
                          poly_invmod, poly_mulmod, poly_powmod, resultant,
                          _subresultant_resultant, _sylvester_resultant)


def P(text):
    return IntPoly.from_text(text)


class TestEvaluation:
    def test_root_by_construction(self):
        assert P("2x-1")(F(1, 2)) == 0

    def test_half_square(self):
        # |x(x-1)| at 1/2 equals (1/2)^2
        assert P("x^2-x")(F(1, 2)) == F(-1, 4)

    def test_constant_term(self):
        assert P("7x^3-7x^2+1")(F(0)) == 1

    def test_sign_at_matches_exact(self):
        rng = random.Random(7)
        for _ in range(200):
            p = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 7))])
            x = F(rng.randint(-40, 40), rng.randint(1, 40))
            v = p(x)
            assert p.sign_at(x) == (v > 0) - (v < 0)


class TestResultant:
    def test_linear_pair(self):
        assert abs(resultant(P("2x-1"), P("x"))) == 1

    def test_half_pair(self):
        # the classic pair: product x(x-1) against its obstruction 2x-1
        assert abs(resultant(P("x^2-x"), P("2x-1"))) == 1

    def test_shared_root_vanishes(self):
        p = P("x^2-x")
        assert resultant(p, p) == 0

    def test_swap_sign(self):
        rng = random.Random(11)
        for _ in range(150):
            p = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 6))])
            q = IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 6))])
            if p.is_zero or q.is_zero:
                continue
            sign = -1 if (p.degree * q.degree) % 2 else 1
            assert resultant(p, q) == sign * resultant(q, p)

    def test_routes_agree(self):
        rng = random.Random(13)
        for _ in range(150):
            p = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 9))])
            q = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 9))])
            if p.is_zero or q.is_zero:
                continue
            assert _sylvester_resultant(p, q) == _subresultant_resultant(p, q)

    def test_root_product_identity(self):
        # |Res(p, q)| = |lc(q)|^deg p * prod |p(beta_j)| over roots of q
        import numpy as np
        rng = random.Random(17)
        checked = 0
        while checked < 40:
            p = IntPoly([rng.randint(-4, 4) for _ in range(rng.randint(2, 5))])
            q = IntPoly([rng.randint(-4, 4) for _ in range(rng.randint(2, 5))])
            if p.is_zero or q.is_zero or q.degree < 1:
                continue
            roots = np.roots(list(reversed(q.coeffs)))
            prod = abs(q.lc) ** p.degree
            for r in roots:
                prod *= abs(sum(c * r ** i for i, c in enumerate(p.coeffs)))
            assert abs(abs(resultant(p, q)) - prod) <= 1e-6 * max(1.0, prod)
            checked += 1

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomial):
            resultant(IntPoly(()), P("x"))


class TestFactor:
    def test_split_linear(self):
        f = factor(P("x^2-x"))
        assert f.content == 1
        assert [g.to_text() for g, _ in f.factors] == ["x-1", "x"] or \
               [g.to_text() for g, _ in f.factors] == ["x", "x-1"]

    def test_two_linears(self):
        f = factor(P("6x^2-5x+1"))
        texts = {g.to_text() for g, _ in f.factors}
        assert texts == {"2x-1", "3x-1"}
        assert f.expand() == P("6x^2-5x+1")

    def test_irreducible_quadratic(self):
        assert is_irreducible(P("3x^2-1"))

    def test_recombination_random(self):
        rng = random.Random(23)
        small = [P("x"), P("x-1"), P("x+1"), P("2x-1"), P("3x-1"),
                 P("x^2+x-1"), P("2x^2-1")]
        for _ in range(30):
            parts = [rng.choice(small) for _ in range(rng.randint(1, 4))]
            c = rng.choice([-3, -1, 1, 2, 6])
            prod = IntPoly((c,))
            for q in parts:
                prod = prod * q
            assert factor(prod).expand() == prod

    def test_deterministic_order(self):
        f = factor(P("x^2-x"))
        assert list(f.factors) == sorted(f.factors,
                                         key=lambda fm: (fm[0].degree,
                                                         fm[0].coeffs))


class TestObstructionValue:
    def test_compare_rational(self):
        assert ObstructionValue(7, 3) > F(1, 2)
        assert ObstructionValue(2, 1) == F(1, 2)
        assert not ObstructionValue(3, 2) > F(6, 10)

    def test_total_order_matches_float(self):
        rng = random.Random(29)
        vals = [ObstructionValue(rng.randint(1, 60), rng.randint(1, 6))
                for _ in range(1000)]
        for a, b in zip(vals, vals[1:]):
            fa, fb = float(a), float(b)
            if abs(fa - fb) < 1e-12:
                continue
            assert (a < b) == (fa < fb)

    def test_exact_fraction(self):
        assert ObstructionValue(8, 3).as_fraction() == F(1, 2)
        assert ObstructionValue(7, 3).as_fraction() is None


class TestTextForms:
    @pytest.mark.parametrize("text,coeffs", [
        ("7x^3-7x^2+1", (1, 0, -7, 7)),
        ("x", (0, 1)),
        ("2x^2 - 1", (-1, 0, 2)),
        ("-x+3", (3, -1)),
        ("x**2+1", (1, 0, 1)),
    ])
    def test_parse(self, text, coeffs):
        assert IntPoly.from_text(text).coeffs == coeffs

    def test_round_trip(self):
        rng = random.Random(31)
        for _ in range(100):
            p = IntPoly([rng.randint(-99, 99) for _ in range(rng.randint(1, 8))])
            assert IntPoly.from_text(p.to_text()) == p

    def test_json_round_trip(self):
        p = P("7x^3-7x^2+1")
        assert IntPoly.from_json_dict(p.to_json_dict()) == p

    def test_parse_error_position(self):
        with pytest.raises(ParseError):
            IntPoly.from_text("7y^3")
        with pytest.raises(ParseError):
            IntPoly.from_text("")


class TestCalculus:
    def test_derivative_examples(self):
        assert P("x^3").derivative() == P("3x^2")
        assert P("7x^3+7x^2-1").derivative(2) == P("42x+14")
        assert P("2x-1").derivative(2).is_zero

    def test_squarefree(self):
        p = P("x") ** 3 * P("x-1") ** 2
        assert p.squarefree_part() == P("x^2-x")
        assert dict((g.to_text(), m) for g, m in p.squarefree_decomposition()) \
            == {"x-1": 2, "x": 3}


class TestModularField:
    def test_inverse(self):
        q = P("7x^3-7x^2+1")
        inv = poly_invmod([F(0), F(1)], q)
        assert poly_mulmod(inv, [F(0), F(1)], q) == [F(1)]

    def test_power_collapses(self):
        # x^2 (x - 1) = -1/7 at every root of 7x^3 - 7x^2 + 1
        q = P("7x^3-7x^2+1")
        acc = poly_mulmod(poly_powmod([F(0), F(1)], 2, q),
                          [F(-1), F(1)], q)
        assert acc == [F(-1, 7)]
