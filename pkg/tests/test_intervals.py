"""Soundness of the outward-rounded interval arithmetic."""

from fractions import Fraction
from random import Random

from corpus import random_polynomial
from jacgate.intervals import Box, Interval, IntervalPoly


def random_interval(rng: Random, scale: float = 4.0) -> Interval:
    a = rng.uniform(-scale, scale)
    b = rng.uniform(-scale, scale)
    return Interval(min(a, b), max(a, b))


def point_in(rng: Random, interval: Interval) -> float:
    return rng.uniform(interval.lo, interval.hi)


class TestArithmetic:
    def test_add_sub_mul_enclose(self):
        rng = Random(101)
        for _ in range(400):
            a = random_interval(rng)
            b = random_interval(rng)
            x = point_in(rng, a)
            y = point_in(rng, b)
            assert (a + b).contains(x + y)
            assert (a - b).contains(x - y)
            assert (a * b).contains(x * y)

    def test_pow_encloses(self):
        rng = Random(103)
        for _ in range(400):
            a = random_interval(rng, 2.0)
            x = point_in(rng, a)
            for k in (0, 1, 2, 3, 5, 8, 12):
                assert a.pow_int(k).contains(x**k)

    def test_pow_even_nonnegative(self):
        assert Interval(-2.0, 1.0).pow_int(2).lo == 0.0

    def test_fraction_conversion_encloses(self):
        rng = Random(107)
        for _ in range(200):
            value = Fraction(rng.randint(-999, 999), rng.randint(1, 997))
            interval = Interval.from_fraction(value)
            assert interval.lo <= value <= interval.hi

    def test_exact_fraction_is_tight(self):
        assert Interval.from_fraction(Fraction(3, 4)) == Interval(0.75, 0.75)


class TestBox:
    def test_split_covers(self):
        box = Box.cube(2, 1.0)
        left, right = box.split()
        assert left.depth == right.depth == 1
        i = box.widest_dim()
        assert left.coords[i].hi == right.coords[i].lo

    def test_norm_sq(self):
        box = Box((Interval(0.5, 0.5), Interval(0.5, 0.5)), 0)
        assert box.norm_sq().contains(0.5)


class TestIntervalPoly:
    def test_bounds_enclose_exact_values(self):
        rng = Random(109)
        for _ in range(120):
            n = rng.choice((1, 2, 3))
            p = random_polynomial(rng, n, max_terms=5, max_degree=4)
            compiled = IntervalPoly(p)
            coords = tuple(random_interval(rng, 1.5) for _ in range(n))
            bound = compiled.bounds(coords)
            for _ in range(5):
                point = tuple(
                    Fraction(rng.randint(-1000, 1000), 1000) for _ in range(n)
                )
                clamped = tuple(
                    min(max(float(v), c.lo), c.hi) for v, c in zip(point, coords)
                )
                exact = p.evaluate([Fraction(v) for v in clamped])
                assert Fraction(bound.lo) <= exact <= Fraction(bound.hi)

    def test_excludes_zero_positive_poly(self):
        from conftest import p2

        compiled = IntervalPoly(p2("x^2 + y^2 + 1"))
        assert compiled.excludes_zero((Interval(-1, 1), Interval(-1, 1)))
