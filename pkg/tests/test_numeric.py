import random
from fractions import Fraction as F

import pytest

from polycontact.numeric import (
    DimensionMismatch,
    HalfSpace,
    Hyperplane,
    LineRelation,
    Side,
        flip,
    intersect_lines,
    rational,
    side_of,
    sqrt_lower,
)


def hs(a, b, c):
    return HalfSpace((F(a), F(b)), F(c))


class TestSideOf:
    def test_interior(self):
        assert side_of(hs(1, 0, 0), (F(-1), F(0))) is Side.INTERIOR

    def test_boundary(self):
        assert side_of(hs(1, 0, 0), (F(0), F(7))) is Side.BOUNDARY

    def test_exterior(self):
        assert side_of(hs(1, 1, 1), (F(1), F(1))) is Side.EXTERIOR

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            side_of(hs(1, 0, 0), (F(1),))

    def test_agrees_with_flip(self):
        rng = random.Random(5)
        for _ in range(200):
            h = hs(rng.randint(-3, 3) or 1, rng.randint(-3, 3), rng.randint(-4, 4))
            p = (F(rng.randint(-8, 8), rng.randint(1, 4)),
                 F(rng.randint(-8, 8), rng.randint(1, 4)))
            s, sf = side_of(h, p), side_of(flip(h), p)
            if s is Side.BOUNDARY:
                assert sf is Side.BOUNDARY
            else:
                assert {s, sf} == {Side.INTERIOR, Side.EXTERIOR}


class TestFlip:
    def test_axis(self):
        assert flip(hs(1, 0, 0)) == hs(-1, 0, 0)

    def test_diagonal(self):
        assert flip(hs(1, 1, 1)) == hs(-1, -1, -1)

    def test_involution(self):
        rng = random.Random(11)
        for _ in range(100):
            h = hs(rng.randint(-5, 5) or 2, rng.randint(-5, 5),
                   F(rng.randint(-9, 9), rng.randint(1, 3)))
            assert flip(flip(h)) == h


class TestCanonicalization:
    def test_scaling_invariance(self):
        rng = random.Random(2)
        for _ in range(100):
            a, b = rng.randint(-5, 5) or 3, rng.randint(-5, 5)
            c = F(rng.randint(-9, 9), rng.randint(1, 5))
            q = F(rng.randint(1, 9), rng.randint(1, 9))
            assert HalfSpace((F(a), F(b)), c) == HalfSpace((a * q, b * q), c * q)

    def test_idempotent(self):
        h = hs(-4, 2, 6)
        assert HalfSpace(h.normal, h.offset) == h
        assert abs(next(c for c in h.normal if c)) == 1

    def test_hyperplane_orientation_free(self):
        assert Hyperplane((F(2), F(0)), F(0)) == Hyperplane((F(-1), F(0)), F(0))
        assert Hyperplane((F(0), F(3)), F(6)) == Hyperplane((F(0), F(-1)), F(-2))

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            HalfSpace((F(0), F(0)), F(1))


class TestIntersectLines:
    def test_point(self):
        kind, p = intersect_lines(Hyperplane((F(1), F(0)), F(0)),
                                  Hyperplane((F(0), F(1)), F(0)))
        assert kind is LineRelation.POINT and p == (F(0), F(0))

    def test_parallel(self):
        kind, p = intersect_lines(Hyperplane((F(1), F(0)), F(0)),
                                  Hyperplane((F(1), F(0)), F(1)))
        assert kind is LineRelation.EMPTY and p is None

    def test_coincident(self):
        kind, _ = intersect_lines(Hyperplane((F(1), F(0)), F(0)),
                                  Hyperplane((F(-2), F(0)), F(0)))
        assert kind is LineRelation.COINCIDENT

    def test_wrong_dimension(self):
        with pytest.raises(DimensionMismatch):
            intersect_lines(Hyperplane((F(1),), F(0)), Hyperplane((F(1),), F(1)))

    def test_solution_lies_on_both(self):
        rng = random.Random(3)
        for _ in range(200):
            l1 = Hyperplane((rng.randint(-4, 4) or 1, rng.randint(-4, 4)),
                            F(rng.randint(-6, 6), rng.randint(1, 3)))
            l2 = Hyperplane((rng.randint(-4, 4) or 2, rng.randint(-4, 4)),
                            F(rng.randint(-6, 6), rng.randint(1, 3)))
            kind, p = intersect_lines(l1, l2)
            if kind is LineRelation.POINT:
                assert l1.contains(p) and l2.contains(p)


class TestRationalExactness:
    def test_sum_against_integer_arithmetic(self):
        # (a/b + c/d) must equal (a*d + c*b)/(b*d) exactly, 1000 pairs
        rng = random.Random(17)
        for _ in range(1000):
            a, b = rng.randint(-10**9, 10**9), rng.randint(1, 10**9)
            c, d = rng.randint(-10**9, 10**9), rng.randint(1, 10**9)
            s = F(a, b) + F(c, d)
            assert s.numerator * (b * d) == (a * d + c * b) * s.denominator

    def test_parse(self):
        assert rational("-3/4") == F(-3, 4)
        assert rational(5) == F(5)
        with pytest.raises(TypeError):
            rational(0.5)


class TestSqrtLower:
    def test_bounds(self):
        rng = random.Random(23)
        for _ in range(300):
            q = F(rng.randint(0, 10**6), rng.randint(1, 10**4))
            r = sqrt_lower(q)
            assert r >= 0 and r * r <= q
            if q > 0:
                # tight within one part in 2**19
                assert (r + r / (1 << 19)) ** 2 > q or r == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            sqrt_lower(F(-1))
