"""Maturity assessment of an adoption state against a model: benefit
realization statuses, value attainment scores, layer coverage, improvement
plans, and next-step recommendations."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .adoption import ADOPTED, IN_PROGRESS, NOT_ADOPTED, AdoptionState, check_adoption
from .errors import PathNotFound, UnknownBenefit, UnreachableTarget
from .graph import enabled_set, layering, minimal_closed_superset
from .model import BdnModel
from .svm import SvmPath

UNREALIZED = "unrealized"
PARTIALLY_REALIZED = "partially_realized"
FULLY_REALIZED = "fully_realized"
_STATUS_RANK = {UNREALIZED: 0, PARTIALLY_REALIZED: 1, FULLY_REALIZED: 2}

MODE_PARTIAL = "partial"
MODE_FULL = "full"


@dataclass(frozen=True)
class AssessmentConfig:
    partial_weight: float = 0.5  # score of a partially realized benefit
    plan_target_mode: str = MODE_PARTIAL

    def __post_init__(self):
        if not 0.0 <= self.partial_weight <= 1.0:
            raise ValueError(f"partial_weight must be in [0, 1], got {self.partial_weight}")
        if self.plan_target_mode not in (MODE_PARTIAL, MODE_FULL):
            raise ValueError(f"plan_target_mode must be partial or full, got {self.plan_target_mode!r}")


@dataclass(frozen=True)
class BenefitStatus:
    benefit_id: str
    status: str  # unrealized | partially_realized | fully_realized
    active_realizers: tuple[str, ...]
    inactive_realizers: tuple[str, ...]


@dataclass(frozen=True)
class LayerCoverage:
    layer: int
    practices: tuple[str, ...]
    enabled_fraction: float


@dataclass(frozen=True)
class PlanStep:
    order: int  # 1-based
    practice_id: str
    unlocks: tuple[str, ...]  # benefits whose status improved at this step


@dataclass(frozen=True)
class AssessmentReport:
    enabled: tuple[str, ...]
    inconsistent: tuple[str, ...]  # adopted but dependencies unmet
    frontier: tuple[str, ...]  # not adopted, dependencies already met
    in_progress: tuple[str, ...]
    benefit_statuses: tuple[BenefitStatus, ...]
    value_attainment: dict[str, float]  # value-map path text -> score
    layer_coverage: tuple[LayerCoverage, ...]
    recommendations: tuple[tuple[str, int], ...]  # (practice id, benefits improved)
    generated_at: str


def _benefit_status(model: BdnModel, enabled: set[str], benefit_id: str) -> BenefitStatus:
    realizers = model.realizers_of(benefit_id)
    active = tuple(p for p in realizers if p in enabled)
    inactive = tuple(p for p in realizers if p not in enabled)
    if realizers and not inactive:
        status = FULLY_REALIZED
    elif active:
        status = PARTIALLY_REALIZED
    else:
        status = UNREALIZED
    return BenefitStatus(benefit_id, status, active, inactive)


def benefit_status(model: BdnModel, adoption: AdoptionState, benefit_id: str) -> BenefitStatus:
    if benefit_id not in model.benefits:
        raise UnknownBenefit(benefit_id)
    return _benefit_status(model, enabled_set(model, adoption), benefit_id)


def _status_ranks(model: BdnModel, enabled: set[str]) -> dict[str, int]:
    return {bid: _STATUS_RANK[_benefit_status(model, enabled, bid).status] for bid in model.benefits}


def _frontier(model: BdnModel, adoption: AdoptionState, enabled: set[str]) -> list[str]:
    out = []
    for pid in sorted(model.practices):
        if adoption.status_of(pid) != NOT_ADOPTED:
            continue
        groups = model.practices[pid].dependency_groups
        if not groups or any(set(g.members) <= enabled for g in groups):
            out.append(pid)
    return out


def value_attainment(
    model: BdnModel, adoption: AdoptionState, config: AssessmentConfig | None = None
) -> dict[str, float]:
    """Score every value-map node that has at least one benefit mapped at or
    below it: the mean benefit weight (full=1, partial=partial_weight,
    unrealized=0), each benefit counted once per node."""
    config = config or AssessmentConfig()
    enabled = enabled_set(model, adoption)
    weight_of = {
        UNREALIZED: 0.0,
        PARTIALLY_REALIZED: config.partial_weight,
        FULLY_REALIZED: 1.0,
    }
    per_node: dict[tuple[str, ...], set[str]] = {}
    display: dict[tuple[str, ...], str] = {}
    for bid, benefit in model.benefits.items():
        for path in benefit.svm_paths:
            for depth in range(1, len(path.segments) + 1):
                prefix = path.segments[:depth]
                key = tuple(SvmPath(prefix).canonical)
                per_node.setdefault(key, set()).add(bid)
                display.setdefault(key, "/".join(prefix))
    scores: dict[str, float] = {}
    for key, bids in per_node.items():
        weights = [
            weight_of[_benefit_status(model, enabled, bid).status] for bid in sorted(bids)
        ]
        scores[display[key]] = sum(weights) / len(weights)
    return dict(sorted(scores.items()))


def recommend_next(model: BdnModel, adoption: AdoptionState, k: int) -> list[tuple[str, int]]:
    """Frontier practices ranked by how many benefit statuses would strictly
    improve if that single practice were adopted; ties by id, truncated to k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    enabled = enabled_set(model, adoption)
    before = _status_ranks(model, enabled)
    scored = []
    for pid in _frontier(model, adoption, enabled):
        what_if = replace(adoption, statuses={**adoption.statuses, pid: ADOPTED})
        after = _status_ranks(model, enabled_set(model, what_if))
        improved = sum(1 for bid in before if after[bid] > before[bid])
        scored.append((pid, improved))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


def assess(
    model: BdnModel, adoption: AdoptionState, config: AssessmentConfig | None = None
) -> AssessmentReport:
    """Full maturity reading of one adoption state. Pure and deterministic:
    identical inputs serialize to identical bytes."""
    config = config or AssessmentConfig()
    check_adoption(model, adoption)
    enabled = enabled_set(model, adoption)
    adopted = {pid for pid in model.practices if adoption.status_of(pid) == ADOPTED}
    in_progress = tuple(
        sorted(pid for pid in model.practices if adoption.status_of(pid) == IN_PROGRESS)
    )
    frontier = tuple(_frontier(model, adoption, enabled))
    statuses = tuple(_benefit_status(model, enabled, bid) for bid in sorted(model.benefits))
    coverage = tuple(
        LayerCoverage(
            layer=i,
            practices=tuple(layer),
            enabled_fraction=len([p for p in layer if p in enabled]) / len(layer),
        )
        for i, layer in enumerate(layering(model))
    )
    recommendations = tuple(recommend_next(model, adoption, max(1, len(frontier)))) if frontier else ()
    return AssessmentReport(
        enabled=tuple(sorted(enabled)),
        inconsistent=tuple(sorted(adopted - enabled)),
        frontier=frontier,
        in_progress=in_progress,
        benefit_statuses=statuses,
        value_attainment=value_attainment(model, adoption, config),
        layer_coverage=coverage,
        recommendations=recommendations,
        generated_at=adoption.timestamp,
    )


def _resolve_target(model: BdnModel, target: SvmPath | str) -> list[str]:
    """Target benefits for planning: a benefit id, or every benefit mapped
    at or below a value-map path. Benefit ids win when both could apply."""
    anchor: SvmPath | None = None
    if isinstance(target, SvmPath):
        anchor = target
    elif target in model.benefits:
        return [target]
    else:
        try:
            anchor = SvmPath.parse(target)
            model.taxonomy.resolve(anchor)
        except (ValueError, PathNotFound):
            if "/" in target:
                raise
            raise UnknownBenefit(target) from None
    model.taxonomy.resolve(anchor)
    return sorted(
        bid
        for bid, benefit in model.benefits.items()
        if any(path.descends_from(anchor) for path in benefit.svm_paths)
    )


def plan(
    model: BdnModel,
    adoption: AdoptionState,
    target: SvmPath | str,
    config: AssessmentConfig | None = None,
) -> list[PlanStep]:
    """Ordered steps that bring the target to the configured status mode.

    Partial mode picks, per unsatisfied target benefit, the realizer whose
    prerequisite completion adds the fewest new practices (ties by id); full
    mode closes over all realizers. Steps are the closure minus what is
    already adopted, prerequisites first, ties by id.
    """
    config = config or AssessmentConfig()
    check_adoption(model, adoption)
    target_benefits = _resolve_target(model, target)
    enabled = enabled_set(model, adoption)
    adopted = frozenset(pid for pid in model.practices if adoption.status_of(pid) == ADOPTED)
    goal_rank = _STATUS_RANK[FULLY_REALIZED if config.plan_target_mode == MODE_FULL else PARTIALLY_REALIZED]

    selected: set[str] = set()
    for bid in target_benefits:
        current = _benefit_status(model, enabled, bid)
        if _STATUS_RANK[current.status] >= goal_rank:
            continue
        realizers = model.realizers_of(bid)
        if not realizers:
            raise UnreachableTarget(bid)
        if config.plan_target_mode == MODE_FULL:
            selected.update(realizers)
        else:
            best = min(
                realizers,
                key=lambda r: (
                    len(minimal_closed_superset(model, {r} | enabled, free=adopted) - adopted),
                    r,
                ),
            )
            selected.add(best)
    if not selected:
        return []

    closure = minimal_closed_superset(model, selected | enabled, free=adopted)
    layer_of = {pid: i for i, layer in enumerate(layering(model)) for pid in layer}
    step_ids = sorted(closure - adopted, key=lambda pid: (layer_of[pid], pid))

    steps: list[PlanStep] = []
    overlay = dict(adoption.statuses)
    before = _status_ranks(model, enabled)
    for order, pid in enumerate(step_ids, start=1):
        overlay[pid] = ADOPTED
        after = _status_ranks(model, enabled_set(model, replace(adoption, statuses=overlay)))
        unlocks = tuple(sorted(bid for bid in before if after[bid] > before[bid]))
        steps.append(PlanStep(order=order, practice_id=pid, unlocks=unlocks))
        before = after
    return steps
