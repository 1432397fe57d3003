"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials are stored as a finite map from exponent multi-indices to
non-zero ``Fraction`` coefficients.  Everything in this module is exact:
no floating point enters any computation here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import DimensionMismatchError

Exponent = tuple[int, ...]
Rational = Fraction | int
RationalPoint = Sequence[Rational]


def _grlex_key(exponent: Exponent) -> tuple[int, Exponent]:
    # graded lexicographic: compare total degree first, then lexicographic
    return (sum(exponent), exponent)


class Polynomial:
    """Polynomial in ``n`` variables with exact rational coefficients.

    Zero coefficients are stripped eagerly, so two polynomials are equal
    iff their term maps are equal; iteration and printing follow graded
    lexicographic order, making both deterministic.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponent, Rational] | None = None):
        if n < 1:
            raise ValueError(f"variable count must be at least 1, got {n}")
        cleaned: dict[Exponent, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            key = tuple(exponent)
            if len(key) != n:
                raise DimensionMismatchError(
                    f"exponent {key} has length {len(key)}, expected {n}"
                )
            if any(k < 0 for k in key):
                raise ValueError(f"negative exponent in {key}")
            value = Fraction(coefficient)
            if value:
                cleaned[key] = value
        self.n = n
        self.terms = cleaned

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, value: Rational) -> "Polynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, index: int) -> "Polynomial":
        if not 0 <= index < n:
            raise IndexError(f"variable index {index} out of range for n={n}")
        exponent = tuple(1 if i == index else 0 for i in range(n))
        return cls(n, {exponent: 1})

    @classmethod
    def monomial(cls, n: int, exponent: Sequence[int], coefficient: Rational = 1) -> "Polynomial":
        return cls(n, {tuple(exponent): coefficient})

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Maximum total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(k) for k in self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]), reverse=True)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for exponent in self.terms:
            for i, k in enumerate(exponent):
                if k:
                    used.add(i)
        return used

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        from .parsing import print_poly

        return f"Polynomial({print_poly(self)!r})"

    # -- ring operations ----------------------------------------------

    def _check_same_n(self, other: "Polynomial") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(
                f"polynomials in {self.n} and {other.n} variables cannot be combined"
            )

    def __add__(self, other: "Polynomial | Rational") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_n(other)
        result = dict(self.terms)
        for exponent, coefficient in other.terms.items():
            total = result.get(exponent, Fraction(0)) + coefficient
            if total:
                result[exponent] = total
            else:
                result.pop(exponent, None)
        return Polynomial(self.n, result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Polynomial | Rational") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other: "Rational") -> "Polynomial":
        return Polynomial.constant(self.n, other) - self

    def __mul__(self, other: "Polynomial | Rational") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_n(other)
        result: dict[Exponent, Fraction] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                total = result.get(key, Fraction(0)) + ca * cb
                if total:
                    result[key] = total
                else:
                    result.pop(key, None)
        return Polynomial(self.n, result)

    __rmul__ = __mul__

    def scale(self, factor: Rational) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, {k: c * factor for k, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"polynomial power must be a non-negative integer, got {exponent}")
        result = Polynomial.constant(self.n, 1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and evaluation ---------------------------------------

    def partial(self, index: int) -> "Polynomial":
        """Exact partial derivative with respect to variable ``index`` (0-based)."""
        if not 0 <= index < self.n:
            raise IndexError(f"variable index {index} out of range for n={self.n}")
        result: dict[Exponent, Fraction] = {}
        for exponent, coefficient in self.terms.items():
            k = exponent[index]
            if k == 0:
                continue
            lowered = exponent[:index] + (k - 1,) + exponent[index + 1:]
            result[lowered] = result.get(lowered, Fraction(0)) + coefficient * k
        return Polynomial(self.n, result)

    def evaluate(self, point: RationalPoint) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.n:
            raise DimensionMismatchError(
                f"point of length {len(point)} for polynomial in {self.n} variables"
            )
        coords = [Fraction(c) for c in point]
        # cache powers per variable up to the largest exponent that occurs
        powers: list[dict[int, Fraction]] = [{0: Fraction(1)} for _ in range(self.n)]
        total = Fraction(0)
        for exponent, coefficient in self.terms.items():
            value = coefficient
            for i, k in enumerate(exponent):
                if k == 0:
                    continue
                cache = powers[i]
                if k not in cache:
                    cache[k] = coords[i] ** k
                value *= cache[k]
            total += value
        return total

    def zero_out(self, indices: Sequence[int]) -> "Polynomial":
        """Set the given variables to zero, dropping every term that uses them."""
        dead = set(indices)
        kept = {k: c for k, c in self.terms.items() if all(k[i] == 0 for i in dead)}
        return Polynomial(self.n, kept)

    def translate(self, offsets: RationalPoint) -> "Polynomial":
        """Substitute ``x_i -> x_i + b_i`` exactly."""
        if len(offsets) != self.n:
            raise DimensionMismatchError("offset length does not match variable count")
        shifts = [Fraction(b) for b in offsets]
        # cache (x_i + b_i)^k per variable
        cache: list[dict[int, Polynomial]] = [{} for _ in range(self.n)]

        def shifted_power(i: int, k: int) -> Polynomial:
            if k not in cache[i]:
                base = Polynomial.variable(self.n, i) + shifts[i]
                cache[i][k] = base ** k
            return cache[i][k]

        total = Polynomial.zero(self.n)
        for exponent, coefficient in self.terms.items():
            term = Polynomial.constant(self.n, coefficient)
            for i, k in enumerate(exponent):
                if k == 0:
                    continue
                if shifts[i] == 0:
                    term = term * Polynomial.monomial(self.n, tuple(k if j == i else 0 for j in range(self.n)))
                else:
                    term = term * shifted_power(i, k)
            total = total + term
        return total


class PolyMap:
    """A square polynomial map: n polynomials in n shared variables."""

    __slots__ = ("n", "components")

    def __init__(self, components: Sequence[Polynomial]):
        components = tuple(components)
        if not components:
            raise ValueError("a polynomial map needs at least one component")
        n = components[0].n
        for i, component in enumerate(components):
            if component.n != n:
                raise DimensionMismatchError(
                    f"component {i} lives in {component.n} variables, expected {n}"
                )
        if len(components) != n:
            raise DimensionMismatchError(
                f"map has {len(components)} components but {n} variables; must be square"
            )
        self.n = n
        self.components = components

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls([Polynomial.variable(n, i) for i in range(n)])

    def evaluate(self, point: RationalPoint) -> tuple[Fraction, ...]:
        return tuple(component.evaluate(point) for component in self.components)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        from .parsing import print_poly

        inner = ", ".join(print_poly(c) for c in self.components)
        return f"PolyMap({inner})"


def jacobian_matrix(fmap: PolyMap) -> list[list[Polynomial]]:
    """Matrix of partials; entry (i, j) is the derivative of component i by variable j."""
    return [[component.partial(j) for j in range(fmap.n)] for component in fmap.components]


def jacobian_det(fmap: PolyMap) -> Polynomial:
    """Exact Jacobian determinant, by cofactor expansion with memoized minors."""
    return matrix_det(jacobian_matrix(fmap))


def matrix_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square matrix of polynomials.

    Cofactor expansion along the first remaining row; minors are memoized
    on their column subset, which keeps the desk-scale sizes (n <= 6) cheap.
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DimensionMismatchError("determinant of a non-square matrix")
    n_vars = matrix[0][0].n
    memo: dict[tuple[int, ...], Polynomial] = {}

    def expand(columns: tuple[int, ...]) -> Polynomial:
        if not columns:
            return Polynomial.constant(n_vars, 1)
        if columns in memo:
            return memo[columns]
        row = size - len(columns)
        total = Polynomial.zero(n_vars)
        for position, column in enumerate(columns):
            entry = matrix[row][column]
            if entry.is_zero:
                continue
            rest = columns[:position] + columns[position + 1:]
            cofactor = entry * expand(rest)
            total = total + (cofactor if position % 2 == 0 else -cofactor)
        memo[columns] = total
        return total

    return expand(tuple(range(size)))


def h_norm(fmap: PolyMap) -> Polynomial:
    """Half the squared Euclidean norm of the map: sum of squared components over 2."""
    total = Polynomial.zero(fmap.n)
    for component in fmap.components:
        total = total + component * component
    return total.scale(Fraction(1, 2))


def gradient_field(h: Polynomial) -> PolyMap:
    """The descent field of ``h``: component j is the negated partial by variable j."""
    return PolyMap([-h.partial(j) for j in range(h.n)])
