"""Injectivity criteria, weight search, and verdict aggregation.

Three sufficient criteria are checked, all under the standing hypotheses
that the map fixes the origin and its Jacobian determinant never vanishes:

  * MapHigherPart     — the map's higher part vanishes only at the origin;
  * HNormHigherPart   — the gradient of the norm function's higher part
                        vanishes only at the origin (equivalently, that
                        higher part has the origin as unique zero);
  * FieldHigherPart   — the higher part of the descent field vanishes only
                        at the origin.

A success of the field criterion also yields a derived weight vector at
which the map criterion is guaranteed to succeed; that derivation is
re-verified here rather than trusted.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from random import Random
from typing import Sequence

import numpy as np

from .certify import (
    CertConfig,
    CertOutcome,
    OutcomeKind,
    gradient_only_origin,
    only_origin,
    unique_zero_nonneg,
)
from .dynamics import WitnessPair, injectivity_witness
from .errors import (
    DegenerateDirectionError,
    InternalInconsistencyError,
    PreconditionError,
    ZeroPolynomialError,
)
from .floatval import FloatSystem, gauss_newton, snap_candidates
from .intervals import Box, IntervalPoly
from .poly import PolyMap, h_norm, jacobian_det
from .sampling import points_in_box
from .weights import (
    BlockStructure,
    Weight,
    block_structure,
    enumerate_weights,
    higher_part,
    higher_part_field,
    higher_part_map,
    tilde_weights,
)


class JacStatus(Enum):
    VERIFIED_ON_BOX = "verified_on_box"
    VIOLATION_FOUND = "violation_found"
    ASSUMED = "assumed"


@dataclass(frozen=True)
class Assumptions:
    f_zero_at_origin: bool
    jac_status: JacStatus
    jac_box: float | None = None
    jac_depth: int | None = None
    jac_point: tuple | None = None
    jac_exact: bool = False

    @property
    def violated(self) -> str | None:
        """Name of a definitely violated hypothesis, if any."""
        if not self.f_zero_at_origin:
            return "f_zero_at_origin"
        if self.jac_status is JacStatus.VIOLATION_FOUND:
            return "jac_nonvanishing"
        return None


class Criterion(Enum):
    MAP_HIGHER_PART = "MapHigherPart"
    H_NORM_HIGHER_PART = "HNormHigherPart"
    FIELD_HIGHER_PART = "FieldHigherPart"


@dataclass(frozen=True)
class CriterionResult:
    criterion: Criterion
    weight: Weight
    outcome: CertOutcome | None
    diagnostic: str | None = None
    gradient_outcome: CertOutcome | None = None
    block: BlockStructure | None = None
    tilde: Weight | None = None

    @property
    def succeeded(self) -> bool:
        return self.outcome is not None and self.outcome.is_only_origin

    @property
    def inconclusive(self) -> bool:
        return self.outcome is not None and self.outcome.is_inconclusive


class VerdictKind(Enum):
    INJECTIVE = "injective"
    NOT_INJECTIVE = "not_injective"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AnalysisConfig:
    s_max: int = 4
    box_radius: float = 10.0
    seed: int = 0
    probes: int = 8
    starts: int = 32
    rho: float = 1e-10
    cert: CertConfig = field(default_factory=CertConfig)
    threads: int | None = None

    def worker_count(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        env = os.environ.get("JACGATE_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                return 1
        return 1


@dataclass(frozen=True)
class WeightSearchResult:
    attempts: dict[Criterion, tuple[CriterionResult, ...]]
    best: dict[Criterion, CriterionResult | None]
    inconclusive: dict[Criterion, tuple[CriterionResult, ...]]


@dataclass(frozen=True)
class VerdictReport:
    kind: VerdictKind
    by: Criterion | None
    weight: Weight | None
    witness: WitnessPair | None
    assumptions: Assumptions
    search: WeightSearchResult
    properness_weight: Weight | None
    tilde: tuple[Weight, Weight] | None  # (source weight, derived weight)
    conflict_note: str | None = None


def check_assumptions(
    fmap: PolyMap, box_radius: float = 10.0, cfg: AnalysisConfig | None = None
) -> Assumptions:
    """Verify the origin condition exactly and the Jacobian condition on a box.

    The determinant is first probed for zeros with damped Newton from
    low-discrepancy starts, then interval branch-and-bound tries to exclude
    zero over the whole box.  Outside the box nothing is claimed: absence
    of both a violation and a full exclusion leaves the status assumed.
    """
    cfg = cfg or AnalysisConfig()
    origin = (Fraction(0),) * fmap.n
    f_zero = all(value == 0 for value in fmap.evaluate(origin))

    det = jacobian_det(fmap)
    if det.is_zero:
        return Assumptions(
            f_zero_at_origin=f_zero,
            jac_status=JacStatus.VIOLATION_FOUND,
            jac_point=(0.0,) * fmap.n,
            jac_exact=True,
        )
    if set(det.terms) == {(0,) * fmap.n}:
        # non-zero constant determinant
        return Assumptions(
            f_zero_at_origin=f_zero,
            jac_status=JacStatus.VERIFIED_ON_BOX,
            jac_box=box_radius,
            jac_depth=0,
        )

    # witness hunt: roots of det inside the box
    det_sys = FloatSystem([det])
    for start in points_in_box(fmap.n, 4 * cfg.probes, box_radius, cfg.seed):
        point, residual, converged = gauss_newton(det_sys, start, tol=1e-12)
        if converged and residual <= 1e-10 and np.all(np.abs(point) <= box_radius):
            for snapped in snap_candidates(point.tolist()):
                if det.evaluate(snapped) == 0:
                    return Assumptions(
                        f_zero_at_origin=f_zero,
                        jac_status=JacStatus.VIOLATION_FOUND,
                        jac_point=snapped,
                        jac_exact=True,
                    )
            return Assumptions(
                f_zero_at_origin=f_zero,
                jac_status=JacStatus.VIOLATION_FOUND,
                jac_point=tuple(point.tolist()),
                jac_exact=False,
            )

    # interval exclusion over the box
    ipoly = IntervalPoly(det)
    stack = [Box.cube(fmap.n, box_radius)]
    processed = 0
    max_depth = 0
    budget = cfg.cert.max_boxes
    depth_limit = min(cfg.cert.depth, 20)
    while stack:
        box = stack.pop()
        processed += 1
        max_depth = max(max_depth, box.depth)
        if ipoly.excludes_zero(box.coords):
            continue
        if box.depth >= depth_limit or processed >= budget:
            return Assumptions(f_zero_at_origin=f_zero, jac_status=JacStatus.ASSUMED)
        left, right = box.split()
        stack.append(right)
        stack.append(left)
    return Assumptions(
        f_zero_at_origin=f_zero,
        jac_status=JacStatus.VERIFIED_ON_BOX,
        jac_box=box_radius,
        jac_depth=max_depth,
    )


def check_map_higher_part(
    fmap: PolyMap, w: Weight, cfg: AnalysisConfig | None = None
) -> CriterionResult:
    cfg = cfg or AnalysisConfig()
    try:
        top = higher_part_map(fmap, w)
    except ZeroPolynomialError as exc:
        return CriterionResult(
            criterion=Criterion.MAP_HIGHER_PART, weight=w, outcome=None, diagnostic=str(exc)
        )
    outcome = only_origin(list(top.components), w, cfg.cert)
    return CriterionResult(criterion=Criterion.MAP_HIGHER_PART, weight=w, outcome=outcome)


def check_h_higher_part(
    fmap: PolyMap, w: Weight, cfg: AnalysisConfig | None = None
) -> CriterionResult:
    """Run both the unique-zero and the gradient form; they must agree.

    The two conditions are equivalent for non-negative quasi-homogeneous
    polynomials, so a conclusive disagreement is an internal bug, never a
    result.
    """
    cfg = cfg or AnalysisConfig()
    h = h_norm(fmap)
    if h.is_zero:
        return CriterionResult(
            criterion=Criterion.H_NORM_HIGHER_PART,
            weight=w,
            outcome=None,
            diagnostic="norm function is identically zero",
        )
    top = higher_part(h, w)
    primary = unique_zero_nonneg(top, w, cfg.cert)
    try:
        secondary = gradient_only_origin(top, w, cfg.cert)
    except DegenerateDirectionError as exc:
        return CriterionResult(
            criterion=Criterion.H_NORM_HIGHER_PART,
            weight=w,
            outcome=primary,
            diagnostic=f"gradient cross-check unavailable: {exc}",
        )
    conclusive = (OutcomeKind.ONLY_ORIGIN, OutcomeKind.NONTRIVIAL_ZERO)
    if (
        primary.kind in conclusive
        and secondary.kind in conclusive
        and primary.kind is not secondary.kind
    ):
        raise InternalInconsistencyError(
            f"unique-zero and gradient checks disagree at weight {tuple(w.s)}: "
            f"{primary.kind.value} vs {secondary.kind.value}",
            reason="disagreement",
        )
    return CriterionResult(
        criterion=Criterion.H_NORM_HIGHER_PART,
        weight=w,
        outcome=primary,
        gradient_outcome=secondary,
    )


def check_field_higher_part(
    fmap: PolyMap, w: Weight, cfg: AnalysisConfig | None = None
) -> CriterionResult:
    cfg = cfg or AnalysisConfig()
    h = h_norm(fmap)
    if h.is_zero:
        return CriterionResult(
            criterion=Criterion.FIELD_HIGHER_PART,
            weight=w,
            outcome=None,
            diagnostic="norm function is identically zero",
        )
    try:
        fhp = higher_part_field(h, w)
    except DegenerateDirectionError as exc:
        return CriterionResult(
            criterion=Criterion.FIELD_HIGHER_PART, weight=w, outcome=None, diagnostic=str(exc)
        )
    bs = block_structure(h, w)
    outcome = only_origin(list(fhp.field.components), w, cfg.cert)
    return CriterionResult(
        criterion=Criterion.FIELD_HIGHER_PART, weight=w, outcome=outcome, block=bs
    )


_CHECKERS = {
    Criterion.MAP_HIGHER_PART: check_map_higher_part,
    Criterion.H_NORM_HIGHER_PART: check_h_higher_part,
    Criterion.FIELD_HIGHER_PART: check_field_higher_part,
}


def derive_tilde_and_verify(
    fmap: PolyMap,
    w: Weight,
    cfg: AnalysisConfig | None = None,
    field_result: CriterionResult | None = None,
) -> tuple[Weight, CriterionResult]:
    """Derive the new weight vector from a field-criterion success and re-verify.

    The construction guarantees the map criterion holds at the derived
    weights and that the norm function's higher part there is squeezed
    between zero and half the squared norm of the map's higher part; both
    facts are checked, and any failure is raised as an inconsistency with
    its cause (refuted vs merely inconclusive) spelled out.
    """
    cfg = cfg or AnalysisConfig()
    if field_result is None:
        field_result = check_field_higher_part(fmap, w, cfg)
    if not field_result.succeeded:
        raise PreconditionError(
            "field criterion did not certify only-origin at the given weight"
        )
    bs = field_result.block or block_structure(h_norm(fmap), w)
    derived = tilde_weights(bs)
    map_result = check_map_higher_part(fmap, derived, cfg)
    if map_result.outcome is None or map_result.outcome.is_nontrivial_zero:
        raise InternalInconsistencyError(
            f"map criterion refuted at derived weight {tuple(derived.s)} although the "
            f"field criterion held at {tuple(w.s)}: implementation bug",
            reason="refuted",
        )
    if map_result.outcome.is_inconclusive:
        raise InternalInconsistencyError(
            f"map criterion inconclusive at derived weight {tuple(derived.s)}; "
            "deeper certification needed",
            reason="inconclusive",
        )
    _assert_sandwich(fmap, derived, cfg.seed)
    return derived, CriterionResult(
        criterion=map_result.criterion,
        weight=map_result.weight,
        outcome=map_result.outcome,
        tilde=derived,
    )


def _assert_sandwich(fmap: PolyMap, w: Weight, seed: int, points: int = 100) -> None:
    """Exact check of 0 <= H_top <= ||F_top||^2 / 2 at random rational points."""
    h_top = higher_part(h_norm(fmap), w)
    f_top = higher_part_map(fmap, w)
    rng = Random(seed + 97)
    for _ in range(points):
        x = tuple(
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(fmap.n)
        )
        middle = h_top.evaluate(x)
        upper = sum((c.evaluate(x) ** 2 for c in f_top.components), Fraction(0)) / 2
        if not (0 <= middle <= upper):
            raise InternalInconsistencyError(
                f"squeeze inequality failed at {x}: 0 <= {middle} <= {upper} is false",
                reason="sandwich",
            )


def weight_search(
    fmap: PolyMap,
    criteria: Sequence[Criterion] | None = None,
    s_max: int | None = None,
    cfg: AnalysisConfig | None = None,
) -> WeightSearchResult:
    """Try canonical weights in (sum, lex) order, stopping per criterion at success."""
    cfg = cfg or AnalysisConfig()
    criteria = list(criteria) if criteria is not None else list(_CHECKERS)
    s_max = s_max if s_max is not None else cfg.s_max
    weights = enumerate_weights(fmap.n, s_max)
    workers = cfg.worker_count()
    attempts: dict[Criterion, tuple[CriterionResult, ...]] = {}
    best: dict[Criterion, CriterionResult | None] = {}
    inconclusive: dict[Criterion, tuple[CriterionResult, ...]] = {}
    for criterion in criteria:
        checker = _CHECKERS[criterion]
        results: list[CriterionResult] = []
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for result in pool.map(lambda w: checker(fmap, w, cfg), weights):
                    results.append(result)
                    if result.succeeded:
                        break
        else:
            for w in weights:
                result = checker(fmap, w, cfg)
                results.append(result)
                if result.succeeded:
                    break
        attempts[criterion] = tuple(results)
        best[criterion] = next((r for r in results if r.succeeded), None)
        inconclusive[criterion] = tuple(r for r in results if r.inconclusive)
    return WeightSearchResult(attempts=attempts, best=best, inconclusive=inconclusive)


def verdict(fmap: PolyMap, cfg: AnalysisConfig | None = None) -> VerdictReport:
    """Aggregate assumptions, criteria, and witness search into one verdict.

    An exact witness pair always beats a fired criterion: the two can only
    coexist when a standing hypothesis fails, and the report then names it.
    If they coexist with hypotheses intact, something is broken and an
    inconsistency is raised instead of a verdict.
    """
    cfg = cfg or AnalysisConfig()
    assumptions = check_assumptions(fmap, cfg.box_radius, cfg)
    witness = injectivity_witness(
        fmap,
        probes=cfg.probes,
        starts=cfg.starts,
        box=cfg.box_radius / 2.0,
        rho=cfg.rho,
        seed=cfg.seed,
    )
    search = weight_search(fmap, None, cfg.s_max, cfg)

    success: CriterionResult | None = None
    for criterion in (
        Criterion.MAP_HIGHER_PART,
        Criterion.H_NORM_HIGHER_PART,
        Criterion.FIELD_HIGHER_PART,
    ):
        if search.best.get(criterion) is not None:
            success = search.best[criterion]
            break

    properness_weight: Weight | None = None
    h_best = search.best.get(Criterion.H_NORM_HIGHER_PART)
    if h_best is not None:
        properness_weight = h_best.weight

    tilde: tuple[Weight, Weight] | None = None
    field_best = search.best.get(Criterion.FIELD_HIGHER_PART)
    if field_best is not None:
        try:
            derived, _ = derive_tilde_and_verify(fmap, field_best.weight, cfg, field_best)
            tilde = (field_best.weight, derived)
        except InternalInconsistencyError as exc:
            if exc.reason != "inconclusive":
                raise

    conflict_note: str | None = None
    violated = assumptions.violated
    if success is not None and violated is not None:
        # every sufficient criterion requires the standing hypotheses; a fired
        # criterion proves nothing once one of them is known to fail
        conflict_note = (
            f"criterion {success.criterion.value} fired at weight {tuple(success.weight.s)} "
            f"but hypothesis {violated} is violated, so its conclusion does not apply"
        )
        success = None

    if witness is not None and witness.exact and success is not None:
        raise InternalInconsistencyError(
            f"criterion {success.criterion.value} certified injectivity at weight "
            f"{tuple(success.weight.s)} but an exact witness pair exists and no "
            "hypothesis is violated",
            reason="refuted",
        )

    if witness is not None and (witness.exact or success is None):
        return VerdictReport(
            kind=VerdictKind.NOT_INJECTIVE,
            by=None,
            weight=None,
            witness=witness,
            assumptions=assumptions,
            search=search,
            properness_weight=properness_weight,
            tilde=tilde,
            conflict_note=conflict_note,
        )
    if success is not None:
        note = conflict_note
        if witness is not None:
            note = "numeric (non-exact) witness pair found; reported alongside the certificate"
        return VerdictReport(
            kind=VerdictKind.INJECTIVE,
            by=success.criterion,
            weight=success.weight,
            witness=witness,
            assumptions=assumptions,
            search=search,
            properness_weight=properness_weight,
            tilde=tilde,
            conflict_note=note,
        )
    return VerdictReport(
        kind=VerdictKind.UNKNOWN,
        by=None,
        weight=None,
        witness=None,
        assumptions=assumptions,
        search=search,
        properness_weight=properness_weight,
        tilde=tilde,
        conflict_note=conflict_note,
    )
