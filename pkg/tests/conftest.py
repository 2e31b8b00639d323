"""Shared fixtures: the shipped deployment model, random AND-OR model
generation, and brute-force oracles kept independent of the library's own
algorithms."""

from __future__ import annotations

import json
import random
from itertools import combinations
from pathlib import Path

import pytest

from vaspi.adoption import ADOPTED, IN_PROGRESS, NOT_ADOPTED, AdoptionState
from vaspi.fixtures import deployment_fixture_path, load_deployment_model
from vaspi.model import BdnModel, parse_model

REPO_ROOT = Path(__file__).resolve().parent.parent

SVM_PATH_POOL = [
    "Customer/Perceived value",
    "Customer/Perceived value/Intrinsic value",
    "Customer/Perceived value/Intrinsic value/functionality",
    "Customer/Perceived value/Intrinsic value/reliability",
    "Customer/Perceived value/Intrinsic value/usability",
    "Customer/Perceived value/Delivery process value/process w.r.t. time",
    "Customer/Customer lifetime value/Revenue/upselling revenue",
    "Internal Business Process/production value",
    "Internal Business Process/production value/market requirement value",
    "Internal Business Process/production value/physical value wrt. time",
    "Innovation and learning/value of technology",
    "Innovation and learning/value of technology/human capital value",
    "Innovation and learning/value of technology/customer capital value",
    "Innovation and learning/value of technology/market value size",
]


@pytest.fixture(scope="session")
def deployment_model() -> BdnModel:
    return load_deployment_model()


@pytest.fixture(scope="session")
def deployment_path() -> Path:
    return deployment_fixture_path()


@pytest.fixture(scope="session")
def deployment_document() -> dict:
    return json.loads(deployment_fixture_path().read_text(encoding="utf-8"))


def random_model_doc(
    rng: random.Random,
    max_practices: int = 12,
    max_groups: int = 3,
    max_benefits: int = 6,
    edge_prob: float = 0.7,
) -> dict:
    """A random model document that is acyclic and reference-closed by
    construction: group members are always drawn from earlier practices."""
    n = rng.randint(1, max_practices)
    pids = [f"p{i:02d}" for i in range(n)]
    practices = []
    for i, pid in enumerate(pids):
        groups = []
        if i > 0:
            for _ in range(rng.randint(0, max_groups)):
                size = rng.randint(1, min(3, i))
                groups.append(sorted(rng.sample(pids[:i], size)))
        practices.append(
            {
                "id": pid,
                "name": f"Practice {i}",
                "description": "",
                "principles": [],
                "depends": groups,
                "provenance": [{"kind": "case", "label": f"c{i % 3 + 1}"}],
            }
        )
    benefits = []
    edges = []
    for j in range(rng.randint(1, max_benefits)):
        bid = f"b{j:02d}"
        benefits.append(
            {
                "id": bid,
                "name": f"Benefit {j}",
                "svm": sorted(rng.sample(SVM_PATH_POOL, rng.randint(1, 2))),
                "provenance": [],
            }
        )
        for pid in pids:
            if rng.random() < edge_prob / max(1, len(pids) ** 0.5):
                edges.append({"practice": pid, "benefit": bid, "provenance": []})
    return {
        "context": "random",
        "origin": rng.choice(["literature", "in_practice"]),
        "taxonomy": {"builtin": "svm-default"},
        "principles": [],
        "practices": practices,
        "benefits": benefits,
        "realizes": edges,
    }


def random_model(rng: random.Random, **kwargs) -> BdnModel:
    return parse_model(random_model_doc(rng, **kwargs))


def random_adoption(rng: random.Random, model: BdnModel) -> AdoptionState:
    statuses = {}
    for pid in model.practices:
        roll = rng.random()
        if roll < 0.35:
            statuses[pid] = ADOPTED
        elif roll < 0.5:
            statuses[pid] = IN_PROGRESS
    return AdoptionState(context=model.context, statuses=statuses, timestamp="2024-01-01T00:00:00Z")


def upgraded_adoption(rng: random.Random, adoption: AdoptionState, model: BdnModel) -> AdoptionState:
    """A copy with some statuses raised (never lowered)."""
    order = {NOT_ADOPTED: 0, IN_PROGRESS: 1, ADOPTED: 2}
    statuses = dict(adoption.statuses)
    for pid in model.practices:
        if rng.random() < 0.4:
            current = order[adoption.status_of(pid)]
            statuses[pid] = [NOT_ADOPTED, IN_PROGRESS, ADOPTED][rng.randint(current, 2)]
    return AdoptionState(
        context=adoption.context, statuses=statuses, notes=adoption.notes, timestamp=adoption.timestamp
    )


# ---------------------------------------------------------------------------
# independent oracles (brute force, no reuse of library search code)


def _group_masks(model: BdnModel) -> tuple[list[str], dict[str, list[int]]]:
    ids = sorted(model.practices)
    index = {pid: i for i, pid in enumerate(ids)}
    masks = {}
    for pid in ids:
        masks[pid] = [
            sum(1 << index[m] for m in g.members) for g in model.practices[pid].dependency_groups
        ]
    return ids, masks


def oracle_minimal_closure(model: BdnModel, targets: set[str]) -> set[str]:
    """Exhaustive 2^n scan for the smallest closed superset; ties broken by
    the lexicographically smallest sorted id tuple."""
    ids, masks = _group_masks(model)
    index = {pid: i for i, pid in enumerate(ids)}
    target_mask = sum(1 << index[t] for t in targets)
    complement = [i for i in range(len(ids)) if not target_mask >> i & 1]
    best = None
    for bits in range(1 << len(complement)):
        mask = target_mask
        for j, i in enumerate(complement):
            if bits >> j & 1:
                mask |= 1 << i
        closed = True
        probe = mask
        while probe:
            i = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            groups = masks[ids[i]]
            if groups and not any(g & mask == g for g in groups):
                closed = False
                break
        if closed:
            members = tuple(ids[i] for i in range(len(ids)) if mask >> i & 1)
            key = (len(members), members)
            if best is None or key < best:
                best = key
    assert best is not None
    return set(best[1])


def oracle_enabled(model: BdnModel, adopted: set[str]) -> set[str]:
    """Straightforward fixpoint, written independently of the library."""
    enabled: set[str] = set()
    while True:
        added = False
        for pid in adopted:
            if pid in enabled:
                continue
            groups = model.practices[pid].dependency_groups
            if not groups or any(all(m in enabled for m in g.members) for g in groups):
                enabled.add(pid)
                added = True
        if not added:
            return enabled


def oracle_min_new_adoptions(model: BdnModel, adoption: AdoptionState, benefit_id: str) -> int | None:
    """Smallest number of additional practices to adopt so that at least one
    realizer of the benefit becomes enabled; None when impossible."""
    realizers = set(model.realizers_of(benefit_id))
    if not realizers:
        return None
    already = {pid for pid in model.practices if adoption.status_of(pid) == ADOPTED}
    pool = sorted(set(model.practices) - already)
    for k in range(len(pool) + 1):
        for combo in combinations(pool, k):
            enabled = oracle_enabled(model, already | set(combo))
            if realizers & enabled:
                return k
    return None
