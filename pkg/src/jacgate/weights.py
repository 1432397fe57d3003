"""Weighted-degree algebra: quasi-homogeneous decomposition and friends.

A weight vector assigns a positive integer to each variable; a polynomial
is quasi-homogeneous of weighted degree ``d`` when every term's weighted
exponent sum equals ``d``, equivalently when it obeys the scaling law
``p(lam^s * x) = lam^d * p(x)`` for all positive ``lam``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateDirectionError, DimensionMismatchError, ZeroPolynomialError
from .poly import Polynomial, PolyMap


@dataclass(frozen=True)
class Weight:
    """Positive integer weight exponents, stored gcd-canonicalized."""

    s: tuple[int, ...]

    def __init__(self, entries: Sequence[int]):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise ValueError("weight vector cannot be empty")
        if any(e < 1 for e in entries):
            raise ValueError(f"weight entries must be positive integers, got {entries}")
        g = math.gcd(*entries)
        object.__setattr__(self, "s", tuple(e // g for e in entries))

    @property
    def n(self) -> int:
        return len(self.s)

    def __iter__(self):
        return iter(self.s)

    def __getitem__(self, index: int) -> int:
        return self.s[index]

    def __repr__(self) -> str:
        return f"Weight({','.join(map(str, self.s))})"


@dataclass(frozen=True)
class QHDecomposition:
    """Sum of quasi-homogeneous parts, degrees strictly increasing."""

    weight: Weight
    parts: tuple[tuple[int, Polynomial], ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(degree for degree, _ in self.parts)

    def part_at(self, degree: int) -> Polynomial:
        for d, part in self.parts:
            if d == degree:
                return part
        n = self.parts[0][1].n if self.parts else 1
        return Polynomial.zero(n)

    @property
    def top(self) -> Polynomial:
        return self.parts[-1][1]


@dataclass(frozen=True)
class FieldHigherPart:
    """Higher part of a descent field, built per component from the potential.

    ``degrees[j]`` is the largest weighted degree whose part of the potential
    still depends on variable j; ``partials[j]`` is that part's derivative,
    and ``field`` assembles the negated partials into a map.
    """

    weight: Weight
    degrees: tuple[int, ...]
    partials: tuple[Polynomial, ...]
    field: PolyMap


@dataclass(frozen=True)
class BlockStructure:
    """Coordinates grouped by their field-degree, sorted descending.

    ``perm`` lists original coordinate indices so that degrees are
    non-increasing (stable under ties); ``sizes``/``degrees``/``block_weights``
    describe the groups; ``m`` is the product of the distinct degrees and
    ``raw_tilde`` the derived weight vector before gcd canonicalization,
    back in original coordinate order.
    """

    weight: Weight
    perm: tuple[int, ...]
    sizes: tuple[int, ...]
    degrees: tuple[int, ...]
    block_weights: tuple[tuple[int, ...], ...]
    component_degrees: tuple[int, ...]
    m: int
    raw_tilde: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Original coordinate indices per block, in permuted order."""
        out = []
        start = 0
        for size in self.sizes:
            out.append(self.perm[start:start + size])
            start += size
        return tuple(out)


def _require_nonzero(p: Polynomial, what: str = "polynomial") -> None:
    if p.is_zero:
        raise ZeroPolynomialError(f"weighted degree of the zero {what} is undefined")


def raw_weighted_degree(p: Polynomial, svec: Sequence[int]) -> int:
    """Max weighted exponent sum over stored terms, for a raw weight vector."""
    _require_nonzero(p)
    if len(svec) != p.n:
        raise DimensionMismatchError("weight length does not match variable count")
    return max(sum(s * k for s, k in zip(svec, exponent)) for exponent in p.terms)


def weighted_degree(p: Polynomial, w: Weight) -> int:
    return raw_weighted_degree(p, w.s)


def qh_decompose(p: Polynomial, w: Weight) -> QHDecomposition:
    """Group terms by weighted degree; the parts sum back to ``p`` exactly."""
    _require_nonzero(p)
    if w.n != p.n:
        raise DimensionMismatchError("weight length does not match variable count")
    buckets: dict[int, dict] = {}
    for exponent, coefficient in p.terms.items():
        degree = sum(s * k for s, k in zip(w.s, exponent))
        buckets.setdefault(degree, {})[exponent] = coefficient
    parts = tuple(
        (degree, Polynomial(p.n, terms)) for degree, terms in sorted(buckets.items())
    )
    return QHDecomposition(weight=w, parts=parts)


def higher_part(p: Polynomial, w: Weight) -> Polynomial:
    """The part of maximal weighted degree."""
    return qh_decompose(p, w).top


def higher_part_map(fmap: PolyMap, w: Weight) -> PolyMap:
    """Componentwise higher parts; a zero component is an error."""
    parts = []
    for i, component in enumerate(fmap.components):
        if component.is_zero:
            raise ZeroPolynomialError(
                f"component {i} of the map is identically zero", component=i
            )
        parts.append(higher_part(component, w))
    return PolyMap(parts)


def euler_check(p: Polynomial, w: Weight, degree: int) -> bool:
    """Exact generalized Euler identity: sum of s_i * x_i * dp/dx_i == degree * p."""
    if w.n != p.n:
        raise DimensionMismatchError("weight length does not match variable count")
    lhs = Polynomial.zero(p.n)
    for i, s_i in enumerate(w.s):
        lhs = lhs + (Polynomial.variable(p.n, i) * p.partial(i)).scale(s_i)
    return lhs == p.scale(degree)


def is_quasi_homogeneous(p: Polynomial, w: Weight) -> bool:
    """True iff all terms share one weighted degree (constants count as degree 0)."""
    if p.is_zero:
        return True
    return len(qh_decompose(p, w).parts) == 1


def higher_part_field(h: Polynomial, w: Weight) -> FieldHigherPart:
    """Higher part of the descent field of ``h``, assembled per component.

    For each variable j the relevant potential part is the highest-degree
    one that still depends on x_j; if no part does, the direction is dead
    and a DegenerateDirectionError is raised.
    """
    decomposition = qh_decompose(h, w)
    degrees: list[int] = []
    partials: list[Polynomial] = []
    for j in range(h.n):
        best: tuple[int, Polynomial] | None = None
        for degree, part in decomposition.parts:
            derivative = part.partial(j)
            if not derivative.is_zero:
                best = (degree, derivative)
        if best is None:
            raise DegenerateDirectionError(j)
        degrees.append(best[0])
        partials.append(best[1])
    field = PolyMap([-q for q in partials])
    return FieldHigherPart(weight=w, degrees=tuple(degrees), partials=tuple(partials), field=field)


def block_structure(h: Polynomial, w: Weight) -> BlockStructure:
    """Sort coordinates by field degree and group ties into blocks."""
    fhp = higher_part_field(h, w)
    degrees = fhp.degrees
    # stable sort by descending degree
    perm = tuple(sorted(range(h.n), key=lambda j: -degrees[j]))
    sizes: list[int] = []
    block_degrees: list[int] = []
    block_weights: list[tuple[int, ...]] = []
    for j in perm:
        d = degrees[j]
        if block_degrees and block_degrees[-1] == d:
            sizes[-1] += 1
        else:
            block_degrees.append(d)
            sizes.append(1)
    start = 0
    for size in sizes:
        block_weights.append(tuple(w.s[j] for j in perm[start:start + size]))
        start += size
    m = math.prod(block_degrees)
    raw_tilde = [0] * h.n
    start = 0
    for size, degree in zip(sizes, block_degrees):
        factor = m // degree
        for j in perm[start:start + size]:
            raw_tilde[j] = factor * w.s[j]
        start += size
    return BlockStructure(
        weight=w,
        perm=perm,
        sizes=tuple(sizes),
        degrees=tuple(block_degrees),
        block_weights=tuple(block_weights),
        component_degrees=degrees,
        m=m,
        raw_tilde=tuple(raw_tilde),
    )


def tilde_weights(bs: BlockStructure) -> Weight:
    """Derived weight vector, gcd-canonicalized, in original coordinate order.

    The raw (pre-canonical) vector and its target degree ``bs.m`` stay
    available on the block structure for degree bookkeeping.
    """
    return Weight(bs.raw_tilde)


def script_h(h: Polynomial, w: Weight, bs: BlockStructure, block_index: int) -> Polynomial:
    """Own-block top of one potential part.

    Takes the quasi-homogeneous part of ``h`` at the block's degree and
    zeroes out every variable belonging to an earlier (higher-degree) block,
    leaving the monomials carried by the block's own variables.
    """
    if not 0 <= block_index < bs.r:
        raise IndexError(f"block index {block_index} out of range for r={bs.r}")
    part = qh_decompose(h, w).part_at(bs.degrees[block_index])
    earlier: list[int] = []
    for b in range(block_index):
        earlier.extend(bs.blocks[b])
    return part.zero_out(earlier)


def script_h_sum(h: Polynomial, w: Weight) -> Polynomial:
    """Sum of the own-block tops over all blocks, in original coordinates."""
    bs = block_structure(h, w)
    total = Polynomial.zero(h.n)
    for i in range(bs.r):
        total = total + script_h(h, w, bs, i)
    return total


def scale_point(w_or_vec: Weight | Sequence[int], lam: Fraction, point: Sequence) -> tuple:
    """Apply the weighted scaling action ``x_i -> lam^{s_i} * x_i`` exactly."""
    svec = w_or_vec.s if isinstance(w_or_vec, Weight) else tuple(w_or_vec)
    if len(svec) != len(point):
        raise DimensionMismatchError("weight length does not match point length")
    lam = Fraction(lam)
    return tuple(Fraction(x) * lam ** s for s, x in zip(svec, point))


def enumerate_weights(n: int, s_max: int) -> list[Weight]:
    """All canonical weights with entries in [1, s_max], ordered by (sum, lex)."""
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    seen: set[tuple[int, ...]] = set()
    out: list[Weight] = []
    def rec(prefix: list[int]):
        if len(prefix) == n:
            if math.gcd(*prefix) == 1:
                key = tuple(prefix)
                if key not in seen:
                    seen.add(key)
                    out.append(Weight(key))
            return
        for v in range(1, s_max + 1):
            rec(prefix + [v])
    rec([])
    out.sort(key=lambda w: (sum(w.s), w.s))
    return out
