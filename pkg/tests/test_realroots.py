import random
from fractions import Fraction as F

import pytest

from monictd.balls import Enclosure
from monictd.errors import ComplexRoots, ZeroPolynomial
from monictd.poly import IntPoly
from monictd.realroots import (RatInterval, all_roots_real_in, count_roots_in,
                               count_real_roots, eval_ball, isolate_roots,
                               isolate_roots_in, real_roots_with_multiplicity,
                               refine, root_span)


def P(text):
    return IntPoly.from_text(text)


class TestCounting:
    def test_symmetric_quadratic(self):
        assert count_roots_in(P("3x^2-1"), RatInterval(-1, 1)) == 2

    def test_cubic_in_window(self):
        assert count_roots_in(P("7x^3-7x^2+1"),
                              RatInterval(F(-67, 200), F(3, 4))) == 3

    def test_no_real_roots(self):
        assert count_roots_in(P("x^2+1"), RatInterval(-10, 10)) == 0

    def test_endpoint_roots_counted(self):
        assert count_roots_in(P("x^2-x"), RatInterval(0, 1)) == 2
        assert count_roots_in(P("x^2-x"), RatInterval(0, F(1, 2))) == 1
        assert count_roots_in(P("x^2-x"), RatInterval(F(1, 2), F(1, 2))) == 0
        assert count_roots_in(P("2x-1"), RatInterval(F(1, 2), F(1, 2))) == 1

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            count_roots_in(IntPoly(()), RatInterval(0, 1))

    def test_agrees_with_isolation(self):
        rng = random.Random(41)
        for _ in range(60):
            p = IntPoly([rng.randint(-6, 6) for _ in range(rng.randint(2, 7))])
            if p.is_zero or p.degree < 1:
                continue
            lo = F(rng.randint(-8, 0), rng.randint(1, 4))
            hi = lo + F(rng.randint(1, 12), rng.randint(1, 3))
            iv = RatInterval(lo, hi)
            boxes = isolate_roots_in(p, iv)
            assert count_roots_in(p, iv) == len(boxes)


class TestIsolation:
    def test_two_simple_roots(self):
        boxes = isolate_roots(P("x^2-x"))
        assert len(boxes) == 2
        assert boxes[0].interval.contains(0) and boxes[1].interval.contains(1)

    def test_symmetric_pair(self):
        boxes = isolate_roots(P("2x^2-1"))
        assert len(boxes) == 2
        assert boxes[0].interval.lo == -boxes[1].interval.hi

    def test_cubic_extremes(self):
        boxes = isolate_roots(P("7x^3+7x^2-1"))
        assert len(boxes) == 3
        lo = refine(boxes[0], F(1, 10 ** 6))
        hi = refine(boxes[-1], F(1, 10 ** 6))
        assert abs(float(lo.midpoint) + 0.737) < 1e-3
        assert abs(float(hi.midpoint) - 0.328) < 1e-3

    def test_signs_flip_across_box(self):
        for box in isolate_roots(P("7x^3-7x^2+1")):
            assert box.sign_left == -box.sign_right != 0


class TestRefine:
    def test_rational_root_width(self):
        box = isolate_roots(P("2x-1"))[0]
        r = refine(box, F(1, 10 ** 20))
        assert r.interval.contains(F(1, 2)) and r.width <= F(1, 10 ** 20)

    def test_cubic_max_root(self):
        box = isolate_roots(P("7x^3-7x^2+1"))[-1]
        r = refine(box, F(1, 10 ** 9))
        assert abs(float(r.midpoint) - 0.737353) < 1e-6

    def test_sqrt_third(self):
        box = isolate_roots(P("3x^2-1"))[0]
        r = refine(box, F(1, 10 ** 9))
        assert abs(float(r.midpoint) + 0.577350269) < 1e-9


class TestSpan:
    def test_sqrt2(self):
        enc = root_span(P("2x^2-1"), F(1, 10 ** 10))
        assert abs(float(enc.center) - 1.414213562) < 1e-9

    def test_two_thirds_sqrt3(self):
        enc = root_span(P("3x^2-1"), F(1, 10 ** 10))
        assert abs(float(enc.center) - 1.154700538) < 1e-9

    def test_unit(self):
        assert root_span(P("x^2-x")).contains(1)

    def test_complex_rejected(self):
        with pytest.raises(ComplexRoots):
            root_span(P("x^2+1"))

    def test_nesting_under_refinement(self):
        prev = None
        for k in (4, 8, 12):
            enc = root_span(P("7x^3+7x^2-1"), F(1, 10 ** k))
            if prev is not None:
                assert prev.contains_ball(enc)
            prev = enc


class TestEvalBall:
    def test_exact_point(self):
        e = eval_ball(P("x^2"), Enclosure.exact(2))
        assert e.center == 4 and e.radius == 0

    def test_half_root(self):
        e = eval_ball(P("2x-1"), Enclosure.exact(F(1, 2)))
        assert e.center == 0 and e.radius == 0

    def test_quarter_identity(self):
        # ((1+sqrt 2)/2)^2 - (1+sqrt 2)/2 = 1/4 by hand algebra
        from monictd.balls import sqrt_ball
        x = (sqrt_ball(F(2), 128) + 1) * Enclosure.exact(F(1, 2), 128)
        e = eval_ball(P("x^2-x"), x)
        assert e.contains(F(1, 4)) and float(e.width) < 1e-30

    def test_soundness_fuzz(self):
        rng = random.Random(47)
        for _ in range(200):
            p = IntPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 6))])
            x = F(rng.randint(-50, 50), rng.randint(1, 50))
            ball = eval_ball(p, Enclosure.exact(x, 64))
            assert ball.contains(p(x))


class TestMultiplicity:
    def test_triple_double(self):
        p = P("x") ** 3 * P("x-1") ** 2
        got = [(float(b.midpoint), m)
               for b, m in real_roots_with_multiplicity(p)]
        assert [m for _x, m in got] == [3, 2]

    def test_table_rows_fill_their_ranges(self):
        # the shipped obstruction rows: root count within the printed range
        # (outward-rounded by 1e-3) equals the degree
        from monictd import fixtures
        for poly, printed in fixtures.halfband_obstructions():
            widened = RatInterval(printed.lo - F(1, 1000),
                                  printed.hi + F(1, 1000))
            assert all_roots_real_in(poly, widened)
        for poly, _value, _span in fixtures.span_rows():
            assert count_real_roots(poly) == poly.squarefree_part().degree
