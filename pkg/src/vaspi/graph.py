"""Pure graph operations over a BDN model: enabled sets under AND-OR
dependency semantics, topological layering, exact minimal prerequisite
closures, and value/benefit tracing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .adoption import ADOPTED, AdoptionState, check_adoption
from .errors import UnknownBenefit, UnknownPractice
from .model import BdnModel, dependency_digraph
from .svm import SvmPath


@dataclass(frozen=True)
class ValueSlice:
    """Everything attached to one value anchor: the benefits mapped under
    it, the practices realizing them, and one minimal prerequisite
    completion of those practices."""

    anchor: str  # value-map path text or a benefit id
    benefits: tuple[str, ...]
    realizing_practices: tuple[str, ...]
    closure_practices: tuple[str, ...]
    realization_edges: tuple[tuple[str, str], ...]


def enabled_set(model: BdnModel, adoption: AdoptionState) -> set[str]:
    """Least fixed point of: a practice is enabled iff it is adopted and
    has no dependency groups or at least one group fully enabled."""
    check_adoption(model, adoption)
    adopted = {pid for pid in model.practices if adoption.status_of(pid) == ADOPTED}
    enabled: set[str] = set()
    changed = True
    while changed:
        changed = False
        for pid in adopted - enabled:
            groups = model.practices[pid].dependency_groups
            if not groups or any(set(g.members) <= enabled for g in groups):
                enabled.add(pid)
                changed = True
    return enabled


def layering(model: BdnModel) -> list[list[str]]:
    """Practices grouped by dependency depth: layer 0 has no prerequisites,
    layer n+1 needs something from layer n. Ascending, each layer sorted."""
    digraph = dependency_digraph(model)
    layer: dict[str, int] = {}
    pending = set(digraph)
    while pending:
        resolved = set()
        for pid in pending:
            members = [m for m in digraph[pid] if m in digraph]
            if all(m in layer for m in members):
                layer[pid] = 1 + max((layer[m] for m in members), default=-1)
                resolved.add(pid)
        if not resolved:
            raise ValueError(f"dependency digraph is cyclic around {sorted(pending)}")
        pending -= resolved
    if not layer:
        return []
    layers: list[list[str]] = [[] for _ in range(max(layer.values()) + 1)]
    for pid in sorted(layer):
        layers[layer[pid]].append(pid)
    return layers


def _closed(groups_of: dict[str, tuple[tuple[str, ...], ...]], candidate: frozenset[str]) -> bool:
    for pid in candidate:
        groups = groups_of[pid]
        if groups and not any(set(g) <= candidate for g in groups):
            return False
    return True


def minimal_closed_superset(
    model: BdnModel, seed: Iterable[str], free: Iterable[str] = ()
) -> frozenset[str]:
    """Smallest self-sufficient superset of `seed` under AND-OR semantics.

    Minimizes the number of members outside `free` (everything when `free`
    is empty); ties break on the lexicographically smallest sorted id
    sequence. Exact search: expand the smallest unsatisfied practice by each
    of its groups in turn, memoizing states and bounding on cost.
    """
    groups_of = {
        pid: tuple(g.members for g in p.dependency_groups) for pid, p in model.practices.items()
    }
    free_set = frozenset(free)
    start = frozenset(seed)
    best_key: tuple[int, tuple[str, ...]] | None = None
    best_set = start
    memo: set[frozenset[str]] = set()

    def cost(candidate: frozenset[str]) -> int:
        return len(candidate - free_set)

    stack = [start]
    while stack:
        state = stack.pop()
        if state in memo:
            continue
        memo.add(state)
        if best_key is not None and cost(state) > best_key[0]:
            continue
        unsatisfied = sorted(
            pid for pid in state if groups_of[pid] and not any(set(g) <= state for g in groups_of[pid])
        )
        if not unsatisfied:
            key = (cost(state), tuple(sorted(state)))
            if best_key is None or key < best_key:
                best_key, best_set = key, state
            continue
        pid = unsatisfied[0]
        for group in sorted(groups_of[pid], key=lambda g: tuple(sorted(g))):
            stack.append(state | frozenset(group))
    return best_set


def minimal_closure(model: BdnModel, targets: Iterable[str]) -> set[str]:
    """Minimum-cardinality practice set containing the targets where every
    member has a fully included dependency group (or none)."""
    targets = set(targets)
    unknown = targets - set(model.practices)
    if unknown:
        raise UnknownPractice(unknown)
    return set(minimal_closed_superset(model, targets))


def _slice_for(model: BdnModel, anchor: str, benefit_ids: set[str]) -> ValueSlice:
    edges = tuple(
        sorted(
            (e.practice_id, e.benefit_id)
            for e in model.realization_edges
            if e.benefit_id in benefit_ids
        )
    )
    realizing = {pid for pid, _ in edges}
    closure = minimal_closure(model, realizing) if realizing else set()
    return ValueSlice(
        anchor=anchor,
        benefits=tuple(sorted(benefit_ids)),
        realizing_practices=tuple(sorted(realizing)),
        closure_practices=tuple(sorted(closure)),
        realization_edges=edges,
    )


def trace_value(model: BdnModel, anchor: SvmPath | str) -> ValueSlice:
    """Slice for a value-map anchor: every benefit mapped at or below it."""
    if isinstance(anchor, str):
        anchor = SvmPath.parse(anchor)
    model.taxonomy.resolve(anchor)  # PathNotFound when the anchor is bogus
    hits = {
        bid
        for bid, benefit in model.benefits.items()
        if any(path.descends_from(anchor) for path in benefit.svm_paths)
    }
    return _slice_for(model, anchor.text, hits)


def trace_benefit(model: BdnModel, benefit_id: str) -> ValueSlice:
    if benefit_id not in model.benefits:
        raise UnknownBenefit(benefit_id)
    return _slice_for(model, benefit_id, {benefit_id})
