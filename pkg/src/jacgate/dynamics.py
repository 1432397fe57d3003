"""Floating-point dynamics: zero finding, descent flow, witness search.

Zeros of the map coincide with singular points of the descent field of
half its squared norm, and at any such zero the field's Jacobian
determinant has sign (-1)^n; both facts are used as numeric checks here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .floatval import FloatSystem, gauss_newton, snap_candidates
from .poly import PolyMap, gradient_field, h_norm, jacobian_matrix
from .sampling import points_in_box


@dataclass(frozen=True)
class ZeroInfo:
    point: tuple[float, ...]
    residual: float
    index: int | None
    note: str | None = None


@dataclass(frozen=True)
class ZeroReport:
    zeros: tuple[ZeroInfo, ...]
    starts_used: int
    dedup_radius: float
    box: float
    seed: int


class FlowStatus(Enum):
    CONVERGED_TO_ZERO_OF_F = "converged_to_zero_of_f"
    LEFT_BOX = "left_box"
    STEP_LIMIT = "step_limit"


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[tuple[float, tuple[float, ...], float], ...]
    status: FlowStatus


@dataclass(frozen=True)
class WitnessPair:
    """A pair of distinct points with equal image, exact when snappable."""

    a: tuple
    b: tuple
    exact: bool
    deviation: float


@dataclass(frozen=True)
class IndexSumReport:
    ok: bool
    properness_weight: tuple[int, ...] | None
    zero_count: int
    indices: tuple[int | None, ...]
    expected_index: int
    note: str | None = None


def find_zeros(
    fmap: PolyMap,
    starts: int = 64,
    box: float = 5.0,
    rho: float = 1e-10,
    dedup_radius: float = 1e-6,
    seed: int = 0,
) -> ZeroReport:
    """Damped Newton from low-discrepancy starts; converged points deduped."""
    if starts < 1:
        raise ValueError("need at least one start")
    fsys = FloatSystem(list(fmap.components))
    found: list[np.ndarray] = []
    residuals: list[float] = []
    for start in points_in_box(fmap.n, starts, box, seed):
        point, residual, converged = gauss_newton(fsys, start, tol=rho)
        if not converged or residual > rho:
            continue
        if any(np.linalg.norm(point - q) <= dedup_radius for q in found):
            continue
        found.append(point)
        residuals.append(residual)
    order = sorted(range(len(found)), key=lambda i: tuple(found[i].tolist()))
    zeros: list[ZeroInfo] = []
    for i in order:
        point = found[i]
        try:
            index = index_at(fmap, point, rho=rho)
            note = None
        except PreconditionError as exc:
            index = None
            note = str(exc)
        zeros.append(
            ZeroInfo(point=tuple(point.tolist()), residual=residuals[i], index=index, note=note)
        )
    return ZeroReport(
        zeros=tuple(zeros), starts_used=starts, dedup_radius=dedup_radius, box=box, seed=seed
    )


def index_at(fmap: PolyMap, q: Sequence[float], rho: float = 1e-10) -> int:
    """Sign of the descent field's Jacobian determinant at a zero of the map."""
    x = np.array(q, dtype=np.float64)
    fsys = FloatSystem(list(fmap.components))
    residual = float(np.max(np.abs(fsys.residual(x))))
    if residual > rho:
        raise PreconditionError(
            f"point is not a zero of the map: residual {residual:.3e} exceeds {rho:.3e}"
        )
    det_df = float(np.linalg.det(fsys.jacobian(x)))
    if abs(det_df) < 1e-8:
        raise PreconditionError(f"near-singular Jacobian at the zero: det {det_df:.3e}")
    descent = gradient_field(h_norm(fmap))
    dy_rows = jacobian_matrix(descent)
    dy_sys = [FloatSystem(row) for row in dy_rows]
    matrix = np.array([s.residual(x) for s in dy_sys])
    det_dy = float(np.linalg.det(matrix))
    if det_dy == 0.0:
        raise PreconditionError("descent field Jacobian is numerically singular")
    return 1 if det_dy > 0 else -1


def flow_descent(
    fmap: PolyMap,
    start: Sequence[float],
    step_target: float = 0.05,
    max_steps: int = 5000,
    box: float = 1e6,
    converge_tol: float = 1e-9,
    h_slack: float = 1e-12,
) -> Trajectory:
    """Integrate the descent field with adaptive explicit steps.

    Each accepted step must not increase the potential (within ``h_slack``);
    a step that does gets halved until it fits or underflows.
    """
    h_poly = h_norm(fmap)
    h_sys = FloatSystem([h_poly])
    y_sys = FloatSystem(list(gradient_field(h_poly).components))
    f_sys = FloatSystem(list(fmap.components))

    def h_value(x: np.ndarray) -> float:
        return float(h_sys.residual(x)[0])

    def velocity(x: np.ndarray) -> np.ndarray:
        return y_sys.residual(x)

    x = np.array(start, dtype=np.float64)
    t = 0.0
    samples = [(t, tuple(x.tolist()), h_value(x))]
    status = FlowStatus.STEP_LIMIT
    basin_tol = max(converge_tol, 1e-5)
    for _ in range(max_steps):
        f_res = float(np.max(np.abs(f_sys.residual(x))))
        if f_res <= converge_tol:
            status = FlowStatus.CONVERGED_TO_ZERO_OF_F
            break
        if f_res <= basin_tol:
            # close enough to a singular point: polish with Newton, which
            # also only ever decreases the potential
            polished, residual, converged = gauss_newton(f_sys, x, tol=converge_tol)
            if converged:
                x = polished
                samples.append((t, tuple(x.tolist()), h_value(x)))
                status = FlowStatus.CONVERGED_TO_ZERO_OF_F
                break
        if float(np.max(np.abs(x))) > box:
            status = FlowStatus.LEFT_BOX
            break
        v = velocity(x)
        speed = float(np.linalg.norm(v))
        if speed == 0.0:
            status = FlowStatus.CONVERGED_TO_ZERO_OF_F
            break
        h = step_target / speed
        h_cur = h_value(x)
        accepted = False
        for _ in range(60):
            # classical RK4 on x' = Y(x)
            k1 = v
            k2 = velocity(x + 0.5 * h * k1)
            k3 = velocity(x + 0.5 * h * k2)
            k4 = velocity(x + h * k3)
            candidate = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if h_value(candidate) <= h_cur + h_slack:
                x = candidate
                t += h
                samples.append((t, tuple(x.tolist()), h_value(x)))
                accepted = True
                break
            h *= 0.5
            if h < 1e-300:
                break
        if not accepted:
            status = FlowStatus.STEP_LIMIT
            break
    return Trajectory(samples=tuple(samples), status=status)


def witness_from_probe(
    fmap: PolyMap,
    probe: Sequence[Fraction | int],
    starts: int = 32,
    box: float = 5.0,
    rho: float = 1e-10,
    seed: int = 0,
) -> WitnessPair | None:
    """Look for a second preimage of F(probe) via zeros of the recentred map."""
    b = tuple(Fraction(v) for v in probe)
    c = fmap.evaluate(b)
    recentred = PolyMap(
        [component.translate(b) - value for component, value in zip(fmap.components, c)]
    )
    report = find_zeros(recentred, starts=starts, box=box, rho=rho, seed=seed)
    b_float = np.array([float(v) for v in b])
    for zero in report.zeros:
        z = np.array(zero.point)
        if float(np.linalg.norm(z)) <= 1e-5:
            continue  # the trivial zero at the probe itself
        # try to promote the pair to exact rationals
        for z_snap in snap_candidates(zero.point):
            if all(v == 0 for v in z_snap):
                continue
            a_exact = tuple(zb + zv for zb, zv in zip(b, z_snap))
            if fmap.evaluate(a_exact) == c:
                return WitnessPair(a=a_exact, b=b, exact=True, deviation=0.0)
        a_float = tuple((z + b_float).tolist())
        fa = FloatSystem(list(fmap.components)).residual(np.array(a_float))
        deviation = float(np.max(np.abs(fa - np.array([float(v) for v in c]))))
        if deviation <= 2 * rho:
            return WitnessPair(
                a=a_float, b=tuple(float(v) for v in b), exact=False, deviation=deviation
            )
    return None


def injectivity_witness(
    fmap: PolyMap,
    probes: int = 8,
    starts: int = 32,
    box: float = 5.0,
    rho: float = 1e-10,
    seed: int = 0,
) -> WitnessPair | None:
    """Search for two points with the same image; absence proves nothing."""
    if probes < 1:
        raise ValueError("need at least one probe")
    probe_points: list[tuple[Fraction, ...]] = []
    for raw in points_in_box(fmap.n, probes, box / 2.0, seed):
        snapped = tuple(Fraction(round(v * 8), 8) for v in raw)
        if snapped not in probe_points:
            probe_points.append(snapped)
    for k, probe in enumerate(probe_points):
        pair = witness_from_probe(
            fmap, probe, starts=starts, box=box, rho=rho, seed=seed + k + 1
        )
        if pair is not None:
            return pair
    return None


def index_sum_check(
    fmap: PolyMap,
    properness_weight: tuple[int, ...] | None,
    starts: int = 64,
    box: float = 5.0,
    rho: float = 1e-10,
    seed: int = 0,
) -> IndexSumReport:
    """Check that exactly one singular point exists and carries index (-1)^n.

    The unique-singular-point conclusion only has mathematical backing when
    properness was certified at some weight; the zero list and indices are
    reported either way, but ``ok`` stays false without that backing.
    """
    expected = (-1) ** fmap.n
    report = find_zeros(fmap, starts=starts, box=box, rho=rho, seed=seed)
    indices = tuple(z.index for z in report.zeros)
    counts_match = len(report.zeros) == 1 and indices == (expected,)
    if properness_weight is None:
        return IndexSumReport(
            ok=False,
            properness_weight=None,
            zero_count=len(report.zeros),
            indices=indices,
            expected_index=expected,
            note="properness was not certified at any weight; counts reported unverified",
        )
    note = None
    if not counts_match:
        note = (
            f"expected one zero of index {expected}, found {len(report.zeros)} "
            f"with indices {indices}; either zeros were missed or properness misreported"
        )
    return IndexSumReport(
        ok=counts_match,
        properness_weight=properness_weight,
        zero_count=len(report.zeros),
        indices=indices,
        expected_index=expected,
        note=note,
    )
