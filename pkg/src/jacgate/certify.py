"""Certify whether a quasi-homogeneous system vanishes only at the origin.

The zero set of a quasi-homogeneous system is invariant under the weighted
scaling action, so any non-trivial real zero can be rescaled onto the unit
Euclidean sphere.  The decision therefore reduces to: does the system have
a common zero on the sphere?

Strategy: first hunt for a witness with damped Gauss-Newton from
low-discrepancy sphere points; failing that, run interval branch-and-bound
over [-1, 1]^n restricted to a shell around the sphere.  A box is discarded
when its norm-square bounds miss the shell or when some polynomial's
interval bounds exclude zero; surviving boxes are subdivided, with Newton
refinement attempts at a few trigger depths.  Exclusion of every box is a
sound certificate; witnesses are verified by residuals and, when the
coordinates snap to small rationals, confirmed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateDirectionError, ZeroPolynomialError
from .floatval import FloatSystem, gauss_newton, snap_candidates
from .intervals import Box, Interval, IntervalPoly
from .poly import Polynomial
from .sampling import points_on_sphere
from .weights import Weight, euler_check, higher_part, raw_weighted_degree


@dataclass(frozen=True)
class CertConfig:
    depth: int = 24
    shell: float = 0.0625  # half-width of the norm-square shell around the sphere
    rho: float = 1e-10     # residual tolerance for witnesses
    tau: float = 1e-8      # allowed distance of a witness norm from 1
    max_boxes: int = 200_000
    probes: int = 16
    seed: int = 0


class OutcomeKind(Enum):
    ONLY_ORIGIN = "only_origin"
    NONTRIVIAL_ZERO = "nontrivial_zero"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CertOutcome:
    """Result of an only-origin decision.

    For a witness outcome, ``witness`` holds floats (or exact Fractions when
    ``exact`` is set) and ``residuals`` the per-polynomial values there.
    For an inconclusive outcome, ``unresolved`` is the deepest box the
    search failed to resolve.
    """

    kind: OutcomeKind
    max_depth: int = 0
    boxes: int = 0
    witness: tuple | None = None
    exact: bool = False
    residuals: tuple[float, ...] | None = None
    unresolved: Box | None = None

    @property
    def is_only_origin(self) -> bool:
        return self.kind is OutcomeKind.ONLY_ORIGIN

    @property
    def is_nontrivial_zero(self) -> bool:
        return self.kind is OutcomeKind.NONTRIVIAL_ZERO

    @property
    def is_inconclusive(self) -> bool:
        return self.kind is OutcomeKind.INCONCLUSIVE


def _sphere_poly(n: int) -> Polynomial:
    terms = {tuple(2 if j == i else 0 for j in range(n)): Fraction(1) for i in range(n)}
    p = Polynomial(n, terms)
    return p - 1


def _validate_system(system: Sequence[Polynomial], w: Weight) -> list[int]:
    """Check the quasi-homogeneity contract; returns each polynomial's degree."""
    if not system:
        raise ValueError("empty system")
    degrees = []
    for i, g in enumerate(system):
        if g.is_zero:
            raise ZeroPolynomialError(f"system polynomial {i} is identically zero", component=i)
        d = raw_weighted_degree(g, w.s)
        if not euler_check(g, w, d):
            raise ValueError(
                f"system polynomial {i} is not quasi-homogeneous for weight {tuple(w.s)}: "
                f"Euler identity fails at degree {d}"
            )
        degrees.append(d)
    return degrees


def _verify_witness(
    system: Sequence[Polynomial],
    fsys: FloatSystem,
    point: np.ndarray,
    cfg: CertConfig,
) -> CertOutcome | None:
    """Accept a refined point as a witness if residuals and norm pass; snap if possible."""
    if not np.all(np.isfinite(point)):
        return None
    norm = float(np.linalg.norm(point))
    if abs(norm - 1.0) > cfg.tau:
        return None
    residuals = np.array([p(point) for p in fsys.polys[: len(system)]])
    if np.max(np.abs(residuals)) > cfg.rho:
        return None
    lo = (Fraction(1) - Fraction(cfg.tau)) ** 2
    hi = (Fraction(1) + Fraction(cfg.tau)) ** 2
    for snapped in snap_candidates(point.tolist()):
        if all(c == 0 for c in snapped):
            continue
        if not all(g.evaluate(snapped) == 0 for g in system):
            continue
        norm_sq = sum(c * c for c in snapped)
        if lo <= norm_sq <= hi:
            return CertOutcome(
                kind=OutcomeKind.NONTRIVIAL_ZERO,
                witness=snapped,
                exact=True,
                residuals=tuple(0.0 for _ in system),
            )
    return CertOutcome(
        kind=OutcomeKind.NONTRIVIAL_ZERO,
        witness=tuple(float(c) for c in point),
        exact=False,
        residuals=tuple(float(r) for r in residuals),
    )


# depths at which surviving boxes get a Newton attempt before the limit
_REFINE_DEPTHS = frozenset({8, 12, 16, 20})


def only_origin(
    system: Sequence[Polynomial], w: Weight, cfg: CertConfig | None = None
) -> CertOutcome:
    """Decide whether the quasi-homogeneous system vanishes only at the origin."""
    cfg = cfg or CertConfig()
    degrees = _validate_system(system, w)
    n = system[0].n

    # a non-zero constant in the system has no zeros at all
    if any(d == 0 for d in degrees):
        return CertOutcome(kind=OutcomeKind.ONLY_ORIGIN)

    augmented = list(system) + [_sphere_poly(n)]
    fsys = FloatSystem(augmented)

    # witness hunt from low-discrepancy sphere points
    for start in points_on_sphere(n, cfg.probes, cfg.seed):
        refined, _, _ = gauss_newton(fsys, start, tol=min(cfg.rho, 1e-12))
        outcome = _verify_witness(system, fsys, refined, cfg)
        if outcome is not None:
            return outcome

    # branch and bound over the shell around the unit sphere
    ipolys = [IntervalPoly(g) for g in system]
    shell = Interval(1.0 - cfg.shell, 1.0 + cfg.shell)
    stack = [Box.cube(n, 1.0)]
    processed = 0
    max_depth_seen = 0
    deepest_unresolved: Box | None = None

    while stack:
        box = stack.pop()
        processed += 1
        max_depth_seen = max(max_depth_seen, box.depth)
        if not box.norm_sq().intersects(shell):
            continue
        if any(p.excludes_zero(box.coords) for p in ipolys):
            continue
        at_limit = box.depth >= cfg.depth or processed >= cfg.max_boxes
        if at_limit or box.depth in _REFINE_DEPTHS:
            refined, _, _ = gauss_newton(fsys, box.center(), tol=min(cfg.rho, 1e-12))
            outcome = _verify_witness(system, fsys, refined, cfg)
            if outcome is not None:
                return replace(outcome, max_depth=max_depth_seen, boxes=processed)
        if at_limit:
            if deepest_unresolved is None or box.depth > deepest_unresolved.depth:
                deepest_unresolved = box
            if processed >= cfg.max_boxes:
                # drain: everything still on the stack counts as unresolved
                for leftover in stack:
                    if deepest_unresolved is None or leftover.depth > deepest_unresolved.depth:
                        deepest_unresolved = leftover
                break
            continue
        left, right = box.split()
        stack.append(right)
        stack.append(left)

    if deepest_unresolved is not None:
        return CertOutcome(
            kind=OutcomeKind.INCONCLUSIVE,
            max_depth=max_depth_seen,
            boxes=processed,
            unresolved=deepest_unresolved,
        )
    return CertOutcome(kind=OutcomeKind.ONLY_ORIGIN, max_depth=max_depth_seen, boxes=processed)


def unique_zero_nonneg(p: Polynomial, w: Weight, cfg: CertConfig | None = None) -> CertOutcome:
    """Only-origin decision for a single non-negative quasi-homogeneous polynomial.

    Non-negativity is the caller's contract (the intended inputs are higher
    parts of sums of squares); it is spot-checked on sample points.
    """
    cfg = cfg or CertConfig()
    fp = FloatSystem([p]).polys[0]
    for point in points_on_sphere(p.n, 16, cfg.seed + 1):
        if fp(np.array(point)) < -1e-9:
            raise ValueError("polynomial is negative at a sample point; nonneg contract violated")
    return only_origin([p], w, cfg)


def gradient_only_origin(p: Polynomial, w: Weight, cfg: CertConfig | None = None) -> CertOutcome:
    """Only-origin decision for the gradient system of a quasi-homogeneous polynomial.

    A dead direction j (the polynomial does not involve x_j) makes the j-th
    unit vector a common zero of the remaining partials whenever they all
    vanish there, which gives an exact witness; otherwise it is surfaced.
    """
    cfg = cfg or CertConfig()
    partials = [p.partial(j) for j in range(p.n)]
    dead = [j for j, q in enumerate(partials) if q.is_zero]
    if dead:
        j = dead[0]
        unit = tuple(Fraction(1) if i == j else Fraction(0) for i in range(p.n))
        if all(q.evaluate(unit) == 0 for q in partials if not q.is_zero):
            return CertOutcome(
                kind=OutcomeKind.NONTRIVIAL_ZERO,
                witness=unit,
                exact=True,
                residuals=tuple(0.0 for _ in partials),
            )
        raise DegenerateDirectionError(j)
    return only_origin(partials, w, cfg)


def properness_certificate(
    h: Polynomial, w: Weight, cfg: CertConfig | None = None
) -> tuple[bool, CertOutcome]:
    """Certify that |h| blows up at infinity via its higher part's unique zero."""
    top = higher_part(h, w)
    outcome = unique_zero_nonneg(top, w, cfg)
    return outcome.is_only_origin, outcome


def brute_force_scan(
    system: Sequence[Polynomial],
    resolution: int,
    rho: float = 1e-10,
    tau: float = 1e-8,
    refine_top: int = 12,
) -> tuple[Fraction, ...] | tuple[float, ...] | None:
    """Test oracle: scan primitive lattice directions on the sphere.

    Normalizes every primitive integer direction with coordinates in
    [-resolution, resolution] onto the unit sphere, ranks them by the
    squared residual of the system, and Newton-refines the best few.
    Returns a verified witness or None.
    """
    if not system:
        raise ValueError("empty system")
    n = system[0].n
    fsys_plain = FloatSystem(list(system))
    directions: set[tuple[int, ...]] = set()

    def rec(prefix: list[int]):
        if len(prefix) == n:
            if any(prefix):
                g = math.gcd(*(abs(v) for v in prefix))
                directions.add(tuple(v // g for v in prefix))
            return
        for v in range(-resolution, resolution + 1):
            rec(prefix + [v])

    rec([])
    ordered = sorted(directions)
    matrix = np.array(ordered, dtype=np.float64)
    matrix /= np.linalg.norm(matrix, axis=1)[:, np.newaxis]
    score = np.zeros(matrix.shape[0])
    for fp in fsys_plain.polys:
        score += fp.many(matrix) ** 2
    scored = [
        (float(score[i]), tuple(matrix[i].tolist())) for i in range(matrix.shape[0])
    ]
    scored.sort(key=lambda item: (item[0], item[1]))

    cfg = CertConfig(rho=rho, tau=tau)
    augmented = FloatSystem(list(system) + [_sphere_poly(n)])
    for _, start in scored[:refine_top]:
        refined, _, _ = gauss_newton(augmented, start, tol=min(rho, 1e-12))
        outcome = _verify_witness(system, augmented, refined, cfg)
        if outcome is not None:
            return outcome.witness
    return None
