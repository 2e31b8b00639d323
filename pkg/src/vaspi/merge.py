"""Matching and merging literature and in-practice models into a joint
model, plus evidence-based evolution of realization edges.

Matching is name-based through canonical keys and an explicit alias table:
deterministic and auditable, no similarity scoring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .errors import MergeCycle, ParseError, TaxonomyMismatch
from .model import (
    Benefit,
    BdnModel,
    DependencyGroup,
    Diagnostic,
    EvidenceRecord,
    ORIGIN_JOINT,
    Practice,
    Principle,
    Provenance,
    RealizationEdge,
    canonical_key,
    canonical_model,
    validate,
)
from .svm import SvmNode, SvmTaxonomy

KINDS = ("practice", "benefit", "principle")

POLICY_UNION_GROUPS = "union-groups"


@dataclass(frozen=True)
class AliasTable:
    """Canonical-key rewrites (alias -> preferred), scoped per element kind.
    Targets are never themselves aliases (no chains)."""

    practices: dict[str, str] = field(default_factory=dict)
    benefits: dict[str, str] = field(default_factory=dict)
    principles: dict[str, str] = field(default_factory=dict)

    def table_for(self, kind: str) -> dict[str, str]:
        return {"practice": self.practices, "benefit": self.benefits, "principle": self.principles}[kind]

    def resolve(self, kind: str, name: str) -> str:
        key = canonical_key(name)
        return self.table_for(kind).get(key, key)


def load_aliases(document: str | dict) -> AliasTable:
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"alias table is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ParseError("alias table must be a JSON object")
    tables: dict[str, dict[str, str]] = {}
    for key in ("practices", "benefits", "principles"):
        raw = document.get(key, {})
        if not isinstance(raw, dict) or not all(
            isinstance(a, str) and isinstance(p, str) for a, p in raw.items()
        ):
            raise ParseError(f'alias table "{key}" must map strings to strings')
        table = {canonical_key(a): canonical_key(p) for a, p in raw.items()}
        chained = sorted(set(table.values()) & set(table))
        if chained:
            raise ParseError(f"alias chain in {key}: {', '.join(chained)} are both alias and target")
        tables[key] = table
    return AliasTable(practices=tables["practices"], benefits=tables["benefits"], principles=tables["principles"])


@dataclass(frozen=True)
class MatchPair:
    left_id: str
    right_id: str
    kind: str


@dataclass(frozen=True)
class DependencyConflict:
    practice_key: str
    left_groups: tuple[tuple[str, ...], ...]
    right_groups: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class SvmConflict:
    benefit_key: str
    left_paths: tuple[str, ...]
    right_paths: tuple[str, ...]


@dataclass(frozen=True)
class MatchReport:
    matched: tuple[MatchPair, ...]
    left_only: dict[str, tuple[str, ...]]  # kind -> ids
    right_only: dict[str, tuple[str, ...]]
    dependency_conflicts: tuple[DependencyConflict, ...]
    svm_conflicts: tuple[SvmConflict, ...]


def _elements(model: BdnModel, kind: str) -> dict[str, str]:
    """id -> name for one element kind."""
    coll = {"practice": model.practices, "benefit": model.benefits, "principle": model.principles}[kind]
    return {eid: element.name for eid, element in coll.items()}


def _by_key(model: BdnModel, kind: str, aliases: AliasTable) -> dict[str, list[str]]:
    grouped: dict[str, list[str]] = {}
    for eid, name in _elements(model, kind).items():
        grouped.setdefault(aliases.resolve(kind, name), []).append(eid)
    return {key: sorted(ids) for key, ids in grouped.items()}


def _group_keys(model: BdnModel, pid: str, aliases: AliasTable) -> tuple[tuple[str, ...], ...]:
    """Dependency groups of a practice expressed as sorted member match-keys."""
    keys = []
    for group in model.practices[pid].dependency_groups:
        members = tuple(
            sorted(
                aliases.resolve("practice", model.practices[m].name) if m in model.practices else m
                for m in group.members
            )
        )
        keys.append(members)
    return tuple(sorted(set(keys)))


def match_models(left: BdnModel, right: BdnModel, aliases: AliasTable | None = None) -> MatchReport:
    """Pair up elements of two models by canonical name (after alias
    substitution), kind by kind, and record where matched elements disagree
    on dependency structure or value-map placement."""
    aliases = aliases or AliasTable()
    matched: list[MatchPair] = []
    left_only: dict[str, tuple[str, ...]] = {}
    right_only: dict[str, tuple[str, ...]] = {}
    for kind in KINDS:
        lk = _by_key(left, kind, aliases)
        rk = _by_key(right, kind, aliases)
        lo: list[str] = []
        ro: list[str] = []
        for key in sorted(set(lk) | set(rk)):
            lids, rids = lk.get(key, []), rk.get(key, [])
            for lid, rid in zip(lids, rids):
                matched.append(MatchPair(lid, rid, kind))
            lo.extend(lids[len(rids):])
            ro.extend(rids[len(lids):])
        left_only[kind] = tuple(sorted(lo))
        right_only[kind] = tuple(sorted(ro))

    dep_conflicts: list[DependencyConflict] = []
    svm_conflicts: list[SvmConflict] = []
    for pair in matched:
        if pair.kind == "practice":
            lg = _group_keys(left, pair.left_id, aliases)
            rg = _group_keys(right, pair.right_id, aliases)
            if lg != rg:
                dep_conflicts.append(
                    DependencyConflict(aliases.resolve("practice", left.practices[pair.left_id].name), lg, rg)
                )
        elif pair.kind == "benefit":
            lp = tuple(sorted(p.text for p in left.benefits[pair.left_id].svm_paths))
            rp = tuple(sorted(p.text for p in right.benefits[pair.right_id].svm_paths))
            if lp != rp:
                svm_conflicts.append(
                    SvmConflict(aliases.resolve("benefit", left.benefits[pair.left_id].name), lp, rp)
                )
    return MatchReport(
        matched=tuple(sorted(matched, key=lambda p: (p.kind, p.left_id, p.right_id))),
        left_only=left_only,
        right_only=right_only,
        dependency_conflicts=tuple(sorted(dep_conflicts, key=lambda c: c.practice_key)),
        svm_conflicts=tuple(sorted(svm_conflicts, key=lambda c: c.benefit_key)),
    )


def _merge_nodes(left: tuple[SvmNode, ...], right: tuple[SvmNode, ...]) -> tuple[SvmNode, ...]:
    by_key = {canonical_key(n.name): n for n in left}
    merged = list(left)
    for node in right:
        key = canonical_key(node.name)
        if key in by_key:
            existing = by_key[key]
            idx = merged.index(existing)
            merged[idx] = SvmNode(
                name=existing.name,
                level=existing.level,
                children=_merge_nodes(existing.children, node.children),
            )
            by_key[key] = merged[idx]
        else:
            merged.append(node)
            by_key[key] = node
    return tuple(merged)


def _merge_taxonomies(left: SvmTaxonomy, right: SvmTaxonomy) -> SvmTaxonomy:
    if left == right:
        return left
    version = left.version if left.version == right.version else f"{left.version}+{right.version}"
    return SvmTaxonomy(version=version, perspectives=_merge_nodes(left.perspectives, right.perspectives))


def _dedup_provenance(entries: tuple[Provenance, ...]) -> tuple[Provenance, ...]:
    seen: set[Provenance] = set()
    out = []
    for entry in entries:
        if entry not in seen:
            seen.add(entry)
            out.append(entry)
    return tuple(out)


def _dedup_evidence(entries: tuple[EvidenceRecord, ...]) -> tuple[EvidenceRecord, ...]:
    seen: set[EvidenceRecord] = set()
    out = []
    for entry in entries:
        if entry not in seen:
            seen.add(entry)
            out.append(entry)
    return tuple(out)


def _unique_id(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    n = 2
    while f"{base}-{n}" in taken:
        n += 1
    return f"{base}-{n}"


def merge_models(
    left: BdnModel,
    right: BdnModel,
    report: MatchReport | None = None,
    policy: str = POLICY_UNION_GROUPS,
    aliases: AliasTable | None = None,
) -> BdnModel:
    """Union the two models into a joint one. Matched practices keep both
    dependency-group lists as alternatives; matched benefits keep the union
    of value-map paths; provenance and evidence are concatenated and
    deduplicated. Field conflicts resolve left-first.
    """
    if policy != POLICY_UNION_GROUPS:
        raise ValueError(f"unknown merge policy {policy!r}")
    aliases = aliases or AliasTable()
    if report is None:
        report = match_models(left, right, aliases)

    # right id -> merged id; matched elements take the left id, right-only
    # elements keep theirs unless it would collide.
    remap: dict[str, dict[str, str]] = {kind: {} for kind in KINDS}
    for pair in report.matched:
        remap[pair.kind][pair.right_id] = pair.left_id
    taken = {
        "practice": set(left.practices),
        "benefit": set(left.benefits),
        "principle": set(left.principles),
    }
    for kind in KINDS:
        for rid in report.right_only[kind]:
            merged_id = _unique_id(rid, taken[kind])
            remap[kind][rid] = merged_id
            taken[kind].add(merged_id)

    def remap_practice(pid: str) -> str:
        return remap["practice"].get(pid, pid)

    principles: dict[str, Principle] = dict(left.principles)
    for rid in report.right_only["principle"]:
        element = right.principles[rid]
        principles[remap["principle"][rid]] = replace(element, id=remap["principle"][rid])
    for pair in report.matched:
        if pair.kind != "principle":
            continue
        l, r = left.principles[pair.left_id], right.principles[pair.right_id]
        principles[pair.left_id] = replace(
            l,
            description=l.description or r.description,
            provenance=_dedup_provenance(l.provenance + r.provenance),
        )

    def remapped_groups(practice: Practice) -> tuple[DependencyGroup, ...]:
        return tuple(
            DependencyGroup(tuple(sorted(remap_practice(m) for m in g.members)), g.provenance)
            for g in practice.dependency_groups
        )

    def union_groups(
        a: tuple[DependencyGroup, ...], b: tuple[DependencyGroup, ...]
    ) -> tuple[DependencyGroup, ...]:
        merged: list[DependencyGroup] = list(a)
        members_seen = {g.members for g in a}
        for g in b:
            if g.members in members_seen:
                idx = next(i for i, h in enumerate(merged) if h.members == g.members)
                merged[idx] = DependencyGroup(
                    g.members, _dedup_provenance(merged[idx].provenance + g.provenance)
                )
            else:
                merged.append(g)
                members_seen.add(g.members)
        return tuple(merged)

    practices: dict[str, Practice] = {pid: replace(p) for pid, p in left.practices.items()}
    for rid in report.right_only["practice"]:
        element = right.practices[rid]
        merged_id = remap["practice"][rid]
        practices[merged_id] = replace(
            element,
            id=merged_id,
            principle_ids=tuple(sorted({remap["principle"].get(x, x) for x in element.principle_ids})),
            dependency_groups=remapped_groups(element),
        )
    for pair in report.matched:
        if pair.kind != "practice":
            continue
        l, r = left.practices[pair.left_id], right.practices[pair.right_id]
        practices[pair.left_id] = replace(
            l,
            description=l.description or r.description,
            principle_ids=tuple(
                sorted(set(l.principle_ids) | {remap["principle"].get(x, x) for x in r.principle_ids})
            ),
            dependency_groups=union_groups(l.dependency_groups, remapped_groups(r)),
            provenance=_dedup_provenance(l.provenance + r.provenance),
        )

    benefits: dict[str, Benefit] = dict(left.benefits)
    for rid in report.right_only["benefit"]:
        element = right.benefits[rid]
        benefits[remap["benefit"][rid]] = replace(element, id=remap["benefit"][rid])
    for pair in report.matched:
        if pair.kind != "benefit":
            continue
        l, r = left.benefits[pair.left_id], right.benefits[pair.right_id]
        paths = {p.canonical: p for p in l.svm_paths}
        for p in r.svm_paths:
            paths.setdefault(p.canonical, p)
        benefits[pair.left_id] = replace(
            l,
            svm_paths=tuple(paths.values()),
            provenance=_dedup_provenance(l.provenance + r.provenance),
        )

    edges: dict[tuple[str, str], RealizationEdge] = {
        (e.practice_id, e.benefit_id): e for e in left.realization_edges
    }
    for e in right.realization_edges:
        key = (remap_practice(e.practice_id), remap["benefit"].get(e.benefit_id, e.benefit_id))
        if key in edges:
            existing = edges[key]
            edges[key] = replace(
                existing,
                provenance=_dedup_provenance(existing.provenance + e.provenance),
                evidence=_dedup_evidence(existing.evidence + e.evidence),
            )
        else:
            edges[key] = replace(e, practice_id=key[0], benefit_id=key[1])

    context = left.context if canonical_key(left.context) == canonical_key(right.context) else f"{left.context}+{right.context}"
    taxonomy = _merge_taxonomies(left.taxonomy, right.taxonomy)
    taxonomy_ref = left.taxonomy_ref if left.taxonomy_ref == right.taxonomy_ref and left.taxonomy == right.taxonomy else None
    merged = canonical_model(
        BdnModel(
            context=context,
            origin=ORIGIN_JOINT,
            taxonomy=taxonomy,
            principles=principles,
            practices=practices,
            benefits=benefits,
            realization_edges=tuple(edges.values()),
            taxonomy_ref=taxonomy_ref,
        )
    )
    errors = [d for d in validate(merged) if d.is_error]
    cycles = [d for d in errors if d.code == "E-CYCLE"]
    if cycles:
        raise MergeCycle(cycles[0].subjects)
    for d in errors:
        if d.code == "E-SVM-PATH":
            raise TaxonomyMismatch(f"merged taxonomies cannot place every benefit: {d.message}")
    if errors:
        raise MergeCycle(errors[0].subjects)  # unreachable by construction; defensive
    return merged


def add_evidence(model: BdnModel, edge: tuple[str, str], record: EvidenceRecord) -> BdnModel:
    """New model with the record appended to one edge's evidence list."""
    practice_id, benefit_id = edge
    found = model.edge(practice_id, benefit_id)  # UnknownEdge when missing
    new_edges = tuple(
        replace(e, evidence=e.evidence + (record,)) if e is found else e
        for e in model.realization_edges
    )
    return replace(model, realization_edges=new_edges)


def edge_confidence(edge: RealizationEdge) -> float:
    """Smoothed success ratio of the edge's evidence: (s + 1) / (n + 2),
    so zero evidence reads 0.5 (unknown), not 0."""
    n = len(edge.evidence)
    s = sum(1 for record in edge.evidence if record.observed)
    return (s + 1) / (n + 2)


def evidence_lints(
    model: BdnModel, threshold: float = 0.2, min_observations: int = 5
) -> list[Diagnostic]:
    """W-LOW-CONFIDENCE for edges whose evidence says the promised benefit
    rarely materializes. Flags candidates for human review; never deletes."""
    diags = []
    for e in model.realization_edges:
        if len(e.evidence) >= min_observations and edge_confidence(e) < threshold:
            diags.append(
                Diagnostic(
                    "W-LOW-CONFIDENCE",
                    f"edge {e.practice_id} -> {e.benefit_id} confidence "
                    f"{edge_confidence(e):.3f} over {len(e.evidence)} observations",
                    (e.practice_id, e.benefit_id),
                )
            )
    return sorted(diags, key=lambda d: d.subjects)
