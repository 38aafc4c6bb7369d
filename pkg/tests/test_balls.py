import math
import random
from fractions import Fraction as F

import pytest

from monictd.balls import (Enclosure, exp_ball, format_directed, log_ball,
                           log_hi, log_lo, precision_ladder, reciprocal_ball,
                           resolve_sign, round_dyadic, sqrt_ball)
from monictd.errors import Undecided


class TestRounding:
    def test_directed(self):
        rng = random.Random(3)
        for _ in range(500):
            x = F(rng.randint(-10 ** 9, 10 ** 9), rng.randint(1, 10 ** 9))
            lo = round_dyadic(x, 64, up=False)
            hi = round_dyadic(x, 64, up=True)
            assert lo <= x <= hi
            assert hi - lo <= abs(x) * F(1, 2 ** 60) + F(1, 2 ** 60)

    def test_dyadic_fixed_point(self):
        x = F(5, 8)
        assert round_dyadic(x, 64, up=False) == x == round_dyadic(x, 64, up=True)


class TestEnclosureArithmetic:
    def test_soundness_fuzz(self):
        rng = random.Random(5)
        for _ in range(300):
            a = F(rng.randint(-999, 999), rng.randint(1, 999))
            b = F(rng.randint(-999, 999), rng.randint(1, 999))
            ea, eb = Enclosure.exact(a, 64), Enclosure.exact(b, 64)
            assert (ea + eb).contains(a + b)
            assert (ea * eb).contains(a * b)
            assert (ea - eb).contains(a - b)

    def test_abs_bounds(self):
        e = Enclosure.from_endpoints(F(-1, 2), F(1, 4))
        lo, hi = e.abs_bounds()
        assert lo == 0 and hi == F(1, 2)

    def test_reciprocal(self):
        e = Enclosure.from_endpoints(F(1, 3), F(1, 2), 96)
        r = reciprocal_ball(e, 96)
        assert r.contains(2) and r.contains(3)
        with pytest.raises(ZeroDivisionError):
            reciprocal_ball(Enclosure.from_endpoints(-1, 1), 64)


class TestTranscendentals:
    def test_log_contains_truth(self):
        rng = random.Random(9)
        for _ in range(100):
            x = F(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6))
            b = log_ball(x, 64)
            assert float(b.lo) <= math.log(x) <= float(b.hi) or b.width < F(1, 2 ** 40)
            assert log_lo(x, 64) <= log_hi(x, 64)

    def test_exp_sqrt(self):
        b = exp_ball(F(1), 96)
        assert b.contains(F(math.e).limit_denominator(10 ** 12)) or \
            abs(float(b.center) - math.e) < 1e-15
        s = sqrt_ball(F(2), 96)
        assert abs(float(s.center) - math.sqrt(2)) < 1e-20


class TestResolveSign:
    def test_decides(self):
        assert resolve_sign(lambda p: log_ball(F(1000001, 10 ** 6), p)) == 1
        assert resolve_sign(lambda p: log_ball(F(999999, 10 ** 6), p)) == -1
        assert resolve_sign(lambda p: Enclosure.exact(0, p)) == 0

    def test_precision_cap(self):
        with pytest.raises(Undecided):
            resolve_sign(lambda p: Enclosure(0, F(1, 2 ** (p // 2)), p), cap=256)

    def test_ladder(self):
        assert list(precision_ladder(64, 256)) == [64, 128, 256]


class TestFormatting:
    @pytest.mark.parametrize("x,sig,up,expect", [
        (F(1, 3), 5, False, "0.33333"),
        (F(1, 3), 5, True, "0.33334"),
        (F(-1, 3), 5, False, "-0.33334"),
        (F(999999999999, 10 ** 6), 6, True, "1000000"),
        (F(0), 10, True, "0"),
        (F(14715, 10 ** 4), 5, True, "1.4715"),
    ])
    def test_directed_decimal(self, x, sig, up, expect):
        assert format_directed(x, sig, up) == expect

    def test_direction_fuzz(self):
        rng = random.Random(13)
        for _ in range(300):
            x = F(rng.randint(-10 ** 8, 10 ** 8), rng.randint(1, 10 ** 6))
            if x == 0:
                continue
            lo = F(format_directed(x, 8, up=False))
            hi = F(format_directed(x, 8, up=True))
            assert lo <= x <= hi
