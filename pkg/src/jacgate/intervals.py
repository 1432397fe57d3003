"""Outward-rounded interval arithmetic and interval polynomial evaluation.

Scalar products and sums in binary64 are correctly rounded, so widening
every computed bound by one ulp in the unfavourable direction yields
enclosures that are sound for exclusion tests.  Tightness is secondary:
it only affects how deep the branch-and-bound has to subdivide.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence

from .poly import Polynomial

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


class Interval(NamedTuple):
    lo: float
    hi: float

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Interval":
        f = float(value)
        if Fraction(f) == value:
            return cls(f, f)
        return cls(_down(f), _up(f))

    def __add__(self, other: "Interval") -> "Interval":  # type: ignore[override]
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":  # type: ignore[override]
        a, b = self
        c, d = other
        p1, p2, p3, p4 = a * c, a * d, b * c, b * d
        return Interval(_down(min(p1, p2, p3, p4)), _up(max(p1, p2, p3, p4)))

    def pow_int(self, k: int) -> "Interval":
        if k < 0:
            raise ValueError("negative interval power")
        if k == 0:
            return Interval(1.0, 1.0)
        if k == 1:
            return self
        lo, hi = self
        if k % 2 == 0:
            big = max(-lo, hi)
            upper = _pow_mag_up(big, k)
            if lo <= 0.0 <= hi:
                return Interval(0.0, upper)
            small = min(abs(lo), abs(hi))
            return Interval(_pow_mag_down(small, k), upper)
        # odd power is monotone
        return Interval(_signed_pow_down(lo, k), _signed_pow_up(hi, k))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def width(self) -> float:
        return self.hi - self.lo

    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


def _pow_mag_down(x: float, k: int) -> float:
    """Lower bound of x**k for x >= 0 via outward-rounded squaring."""
    result = 1.0
    base = x
    while k:
        if k & 1:
            result = _down(result * base)
        k >>= 1
        if k:
            base = _down(base * base)
    return max(result, 0.0)


def _pow_mag_up(x: float, k: int) -> float:
    result = 1.0
    base = x
    while k:
        if k & 1:
            result = _up(result * base)
        k >>= 1
        if k:
            base = _up(base * base)
    return result


def _signed_pow_down(x: float, k: int) -> float:
    # k odd: x**k keeps the sign of x
    return _pow_mag_down(x, k) if x >= 0 else -_pow_mag_up(-x, k)


def _signed_pow_up(x: float, k: int) -> float:
    return _pow_mag_up(x, k) if x >= 0 else -_pow_mag_down(-x, k)


class Box(NamedTuple):
    coords: tuple[Interval, ...]
    depth: int

    @classmethod
    def cube(cls, n: int, radius: float) -> "Box":
        return cls(tuple(Interval(-radius, radius) for _ in range(n)), 0)

    def center(self) -> tuple[float, ...]:
        return tuple(c.mid() for c in self.coords)

    def widest_dim(self) -> int:
        widths = [c.width() for c in self.coords]
        return widths.index(max(widths))

    def split(self) -> tuple["Box", "Box"]:
        i = self.widest_dim()
        interval = self.coords[i]
        mid = interval.mid()
        left = self.coords[:i] + (Interval(interval.lo, mid),) + self.coords[i + 1:]
        right = self.coords[:i] + (Interval(mid, interval.hi),) + self.coords[i + 1:]
        return Box(left, self.depth + 1), Box(right, self.depth + 1)

    def norm_sq(self) -> Interval:
        total = Interval(0.0, 0.0)
        for c in self.coords:
            total = total + c.pow_int(2)
        return total

    def max_width(self) -> float:
        return max(c.width() for c in self.coords)


class IntervalPoly:
    """A polynomial compiled for interval evaluation over boxes."""

    __slots__ = ("n", "terms")

    def __init__(self, p: Polynomial):
        self.n = p.n
        self.terms = [
            (Interval.from_fraction(c), exponent) for exponent, c in p.sorted_terms()
        ]

    def bounds(self, coords: Sequence[Interval]) -> Interval:
        powers: list[dict[int, Interval]] = [{} for _ in range(self.n)]
        total = Interval(0.0, 0.0)
        for coefficient, exponent in self.terms:
            term = coefficient
            for i, k in enumerate(exponent):
                if k == 0:
                    continue
                cache = powers[i]
                value = cache.get(k)
                if value is None:
                    value = coords[i].pow_int(k)
                    cache[k] = value
                term = term * value
            total = total + term
        return total

    def excludes_zero(self, coords: Sequence[Interval]) -> bool:
        bound = self.bounds(coords)
        return bound.lo > 0.0 or bound.hi < 0.0
