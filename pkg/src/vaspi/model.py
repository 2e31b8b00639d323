"""BDN model core: practices, principles, benefits, dependency groups,
realization edges, and the validation diagnostics over them.

Models are immutable values. Anything that "changes" a model (adding
evidence, merging) builds a new one.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import ModelDocumentError, TaxonomyError, UnknownEdge
from .svm import (
    SvmPath,
    SvmTaxonomy,
    canonical_key,
    default_taxonomy,
    load_taxonomy,
    resolved_path_text,
)

ORIGIN_LITERATURE = "literature"
ORIGIN_IN_PRACTICE = "in_practice"
ORIGIN_JOINT = "joint"
ORIGINS = (ORIGIN_LITERATURE, ORIGIN_IN_PRACTICE, ORIGIN_JOINT)

PROVENANCE_KINDS = ("literature", "case")

BUILTIN_TAXONOMY = "svm-default"


@dataclass(frozen=True)
class Provenance:
    kind: str  # "literature" (citation key) or "case" (case id such as "c1")
    label: str
    note: str = ""


@dataclass(frozen=True)
class EvidenceRecord:
    """One observed outcome for a realization edge: after the practice was
    enabled in the named case, was the benefit observed or not."""

    case: str
    observed: bool
    date: str  # ISO-8601
    note: str = ""


@dataclass(frozen=True)
class DependencyGroup:
    """One alternative set of prerequisites: all members required, any one
    satisfied group suffices for the owning practice."""

    members: tuple[str, ...]
    provenance: tuple[Provenance, ...] = ()


@dataclass(frozen=True)
class Principle:
    id: str
    name: str
    description: str = ""
    provenance: tuple[Provenance, ...] = ()


@dataclass(frozen=True)
class Practice:
    id: str
    name: str
    description: str = ""
    principle_ids: tuple[str, ...] = ()
    dependency_groups: tuple[DependencyGroup, ...] = ()
    provenance: tuple[Provenance, ...] = ()


@dataclass(frozen=True)
class Benefit:
    id: str
    name: str
    svm_paths: tuple[SvmPath, ...] = ()
    provenance: tuple[Provenance, ...] = ()


@dataclass(frozen=True)
class RealizationEdge:
    practice_id: str
    benefit_id: str
    provenance: tuple[Provenance, ...] = ()
    evidence: tuple[EvidenceRecord, ...] = ()


@dataclass(frozen=True)
class Diagnostic:
    code: str  # E-* blocks downstream use, W-* does not
    message: str
    subjects: tuple[str, ...] = ()

    @property
    def is_error(self) -> bool:
        return self.code.startswith("E-")

    def __str__(self) -> str:
        subj = f" [{', '.join(self.subjects)}]" if self.subjects else ""
        return f"{self.code}: {self.message}{subj}"


def _sort_diagnostics(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=lambda d: (d.code, d.subjects, d.message))


@dataclass(frozen=True, eq=True)
class BdnModel:
    context: str
    origin: str
    taxonomy: SvmTaxonomy
    principles: dict[str, Principle] = field(default_factory=dict)
    practices: dict[str, Practice] = field(default_factory=dict)
    benefits: dict[str, Benefit] = field(default_factory=dict)
    realization_edges: tuple[RealizationEdge, ...] = ()
    taxonomy_ref: str | None = None  # set when the document named a builtin

    @cached_property
    def edges_by_benefit(self) -> dict[str, tuple[RealizationEdge, ...]]:
        grouped: dict[str, list[RealizationEdge]] = {}
        for edge in self.realization_edges:
            grouped.setdefault(edge.benefit_id, []).append(edge)
        return {bid: tuple(edges) for bid, edges in grouped.items()}

    @cached_property
    def edges_by_practice(self) -> dict[str, tuple[RealizationEdge, ...]]:
        grouped: dict[str, list[RealizationEdge]] = {}
        for edge in self.realization_edges:
            grouped.setdefault(edge.practice_id, []).append(edge)
        return {pid: tuple(edges) for pid, edges in grouped.items()}

    def realizers_of(self, benefit_id: str) -> tuple[str, ...]:
        return tuple(sorted(e.practice_id for e in self.edges_by_benefit.get(benefit_id, ())))

    def edge(self, practice_id: str, benefit_id: str) -> RealizationEdge:
        for e in self.realization_edges:
            if e.practice_id == practice_id and e.benefit_id == benefit_id:
                return e
        raise UnknownEdge(practice_id, benefit_id)


def canonical_model(model: BdnModel) -> BdnModel:
    """Rebuild the model with every collection in canonical order: id-sorted
    collections, member-sorted groups, canonically sorted value paths."""

    def norm_practice(p: Practice) -> Practice:
        groups = tuple(
            sorted(
                (DependencyGroup(tuple(sorted(g.members)), g.provenance) for g in p.dependency_groups),
                key=lambda g: g.members,
            )
        )
        return replace(p, principle_ids=tuple(sorted(p.principle_ids)), dependency_groups=groups)

    def norm_benefit(b: Benefit) -> Benefit:
        return replace(b, svm_paths=tuple(sorted(b.svm_paths, key=lambda sp: sp.canonical)))

    return replace(
        model,
        principles={k: model.principles[k] for k in sorted(model.principles)},
        practices={k: norm_practice(model.practices[k]) for k in sorted(model.practices)},
        benefits={k: norm_benefit(model.benefits[k]) for k in sorted(model.benefits)},
        realization_edges=tuple(
            sorted(model.realization_edges, key=lambda e: (e.practice_id, e.benefit_id))
        ),
    )


# ---------------------------------------------------------------------------
# dependency digraph and cycle detection


def dependency_digraph(model: BdnModel) -> dict[str, tuple[str, ...]]:
    """Conservative digraph: edge p -> q whenever q is a member of any of
    p's dependency groups. Every practice id appears as a key."""
    out: dict[str, tuple[str, ...]] = {}
    for pid in model.practices:
        p = model.practices[pid]
        members: set[str] = set()
        for group in p.dependency_groups:
            members.update(m for m in group.members if m in model.practices or m == pid)
        out[pid] = tuple(sorted(members))
    return out


def detect_cycles(digraph: Mapping[str, Sequence[str]]) -> list[list[str]]:
    """One representative cycle per strongly connected component, each a
    closed walk like [a, b, a]; empty iff the digraph is acyclic."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[list[str]] = []
    counter = [0]

    def strongconnect(root: str):
        work = [(root, iter(sorted(digraph.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in digraph:
                    continue
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(sorted(digraph.get(succ, ())))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                sccs.append(component)

    for node in sorted(digraph):
        if node not in index:
            strongconnect(node)

    cycles: list[list[str]] = []
    for component in sccs:
        members = set(component)
        if len(component) == 1:
            node = component[0]
            if node in digraph.get(node, ()):
                cycles.append([node, node])
            continue
        cycles.append(_cycle_through(min(members), digraph, members))
    cycles.sort()
    return cycles


def _cycle_through(start: str, digraph: Mapping[str, Sequence[str]], members: set[str]) -> list[str]:
    # Shortest closed walk through `start` inside one SCC; BFS with sorted
    # neighbor order keeps the result deterministic.
    parent: dict[str, str] = {}
    queue: deque[str] = deque()
    for succ in sorted(digraph.get(start, ())):
        if succ == start:
            return [start, start]
        if succ in members and succ not in parent:
            parent[succ] = start
            queue.append(succ)
    while queue:
        node = queue.popleft()
        for succ in sorted(digraph.get(node, ())):
            if succ == start:
                walk = [node]
                while walk[-1] != start:
                    walk.append(parent[walk[-1]])
                walk.reverse()
                return walk + [start]
            if succ in members and succ not in parent:
                parent[succ] = node
                queue.append(succ)
    raise AssertionError(f"no cycle through {start!r} in SCC {sorted(members)!r}")


# ---------------------------------------------------------------------------
# validation


def validate(model: BdnModel) -> list[Diagnostic]:
    """Every defect in the model, exhaustively, sorted by (code, subjects).
    E-* diagnostics make the model unusable downstream; W-* do not."""
    diags: list[Diagnostic] = []

    for pid, practice in model.practices.items():
        for ref in practice.principle_ids:
            if ref not in model.principles:
                diags.append(
                    Diagnostic("E-DANGLING-REF", f"practice {pid} cites unknown principle {ref}", (pid, ref))
                )
        for group in practice.dependency_groups:
            if not group.members:
                diags.append(Diagnostic("E-PARSE", f"practice {pid} has an empty dependency group", (pid,)))
            for member in group.members:
                if member != pid and member not in model.practices:
                    diags.append(
                        Diagnostic(
                            "E-DANGLING-REF", f"practice {pid} depends on unknown practice {member}", (pid, member)
                        )
                    )

    for bid, benefit in model.benefits.items():
        if not benefit.svm_paths:
            diags.append(Diagnostic("E-SVM-PATH", f"benefit {bid} has no value-map path", (bid,)))
        for path in benefit.svm_paths:
            if len(path.segments) < 2:
                diags.append(
                    Diagnostic(
                        "E-SVM-PATH", f"benefit {bid} path {path.text!r} is above aspect level", (bid,)
                    )
                )
                continue
            try:
                model.taxonomy.resolve(path)
            except Exception:
                diags.append(
                    Diagnostic("E-SVM-PATH", f"benefit {bid} path {path.text!r} does not resolve", (bid,))
                )

    seen_edges: set[tuple[str, str]] = set()
    for edge in model.realization_edges:
        key = (edge.practice_id, edge.benefit_id)
        if key in seen_edges:
            diags.append(
                Diagnostic("E-DUPLICATE-ID", f"duplicate realization edge {key[0]} -> {key[1]}", key)
            )
        seen_edges.add(key)
        if edge.practice_id not in model.practices:
            diags.append(
                Diagnostic("E-DANGLING-REF", f"edge source {edge.practice_id} is not a practice", key)
            )
        if edge.benefit_id not in model.benefits:
            diags.append(
                Diagnostic("E-DANGLING-REF", f"edge target {edge.benefit_id} is not a benefit", key)
            )

    for cycle in detect_cycles(dependency_digraph(model)):
        diags.append(
            Diagnostic("E-CYCLE", f"dependency cycle: {' -> '.join(cycle)}", tuple(cycle))
        )

    if not any(d.is_error for d in diags):
        diags.extend(_warnings(model))
    return _sort_diagnostics(diags)


def _warnings(model: BdnModel) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    realized = {e.benefit_id for e in model.realization_edges}
    for bid in model.benefits:
        if bid not in realized:
            diags.append(
                Diagnostic("W-UNREALIZED-BENEFIT", f"benefit {bid} has no realizing practice", (bid,))
            )

    # A practice is useful when it carries an edge itself or some dependent
    # (transitively) does; propagate from edge-carrying practices down the
    # dependency digraph to their prerequisites.
    digraph = dependency_digraph(model)
    useful = {e.practice_id for e in model.realization_edges if e.practice_id in model.practices}
    queue = deque(sorted(useful))
    while queue:
        node = queue.popleft()
        for member in digraph.get(node, ()):
            if member not in useful:
                useful.add(member)
                queue.append(member)
    for pid in model.practices:
        if pid not in useful:
            diags.append(
                Diagnostic("W-ORPHAN-PRACTICE", f"practice {pid} reaches no benefit", (pid,))
            )
    return diags


# ---------------------------------------------------------------------------
# document parsing


def _parse_provenance(raw, where: str, diags: list[Diagnostic]) -> tuple[Provenance, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        diags.append(Diagnostic("E-PARSE", f"provenance of {where} must be a list", (where,)))
        return ()
    entries = []
    for item in raw:
        if not isinstance(item, dict):
            diags.append(Diagnostic("E-PARSE", f"provenance entry of {where} must be an object", (where,)))
            continue
        kind = item.get("kind")
        label = item.get("label")
        note = item.get("note", "")
        if kind not in PROVENANCE_KINDS:
            diags.append(Diagnostic("E-PARSE", f"provenance kind {kind!r} on {where} is invalid", (where,)))
            continue
        if not isinstance(label, str) or not label:
            diags.append(Diagnostic("E-PARSE", f"provenance label on {where} must be non-empty", (where,)))
            continue
        entries.append(Provenance(kind=kind, label=label, note=note if isinstance(note, str) else ""))
    return tuple(entries)


def _parse_evidence(raw, where: str, diags: list[Diagnostic]) -> tuple[EvidenceRecord, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        diags.append(Diagnostic("E-PARSE", f"evidence of {where} must be a list", (where,)))
        return ()
    records = []
    for item in raw:
        if not isinstance(item, dict) or not isinstance(item.get("case"), str) or not item.get("case"):
            diags.append(Diagnostic("E-PARSE", f"evidence record on {where} needs a case label", (where,)))
            continue
        if not isinstance(item.get("observed"), bool):
            diags.append(Diagnostic("E-PARSE", f"evidence record on {where} needs boolean observed", (where,)))
            continue
        records.append(
            EvidenceRecord(
                case=item["case"],
                observed=item["observed"],
                date=item.get("date", "") if isinstance(item.get("date", ""), str) else "",
                note=item.get("note", "") if isinstance(item.get("note", ""), str) else "",
            )
        )
    return tuple(records)


def _parse_groups(raw, pid: str, diags: list[Diagnostic]) -> tuple[DependencyGroup, ...]:
    if raw is None:
        return ()
    if not isinstance(raw, list):
        diags.append(Diagnostic("E-PARSE", f"depends of practice {pid} must be a list of groups", (pid,)))
        return ()
    groups = []
    for entry in raw:
        # A group is a bare id list, or an object when it carries provenance.
        if isinstance(entry, dict):
            members = entry.get("members")
            prov = _parse_provenance(entry.get("provenance"), f"group of {pid}", diags)
        else:
            members = entry
            prov = ()
        if not isinstance(members, list) or not members or not all(isinstance(m, str) for m in members):
            diags.append(
                Diagnostic("E-PARSE", f"dependency group of practice {pid} must be a non-empty id list", (pid,))
            )
            continue
        groups.append(DependencyGroup(members=tuple(members), provenance=prov))
    return tuple(groups)


def parse_model(document: str | dict, builtin_taxonomy: SvmTaxonomy | None = None) -> BdnModel:
    """Parse and validate a model document.

    Returns the model when no E-* defects exist (warnings are allowed);
    otherwise raises ModelDocumentError carrying the complete diagnostic
    list. `builtin_taxonomy` overrides what {"builtin": "svm-default"}
    resolves to.
    """
    diags: list[Diagnostic] = []
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ModelDocumentError([Diagnostic("E-PARSE", f"not valid JSON: {exc}")])
    if not isinstance(document, dict):
        raise ModelDocumentError([Diagnostic("E-PARSE", "model document must be a JSON object")])

    context = document.get("context")
    if not isinstance(context, str):
        diags.append(Diagnostic("E-PARSE", 'model document needs a string "context"'))
        context = ""
    origin = document.get("origin")
    if origin not in ORIGINS:
        diags.append(Diagnostic("E-PARSE", f'origin must be one of {", ".join(ORIGINS)}, got {origin!r}'))
        origin = ORIGIN_LITERATURE

    taxonomy_ref: str | None = None
    raw_tax = document.get("taxonomy")
    taxonomy = default_taxonomy()
    if isinstance(raw_tax, dict) and set(raw_tax) == {"builtin"}:
        if raw_tax["builtin"] != BUILTIN_TAXONOMY:
            diags.append(Diagnostic("E-PARSE", f"unknown builtin taxonomy {raw_tax['builtin']!r}"))
        else:
            taxonomy_ref = BUILTIN_TAXONOMY
            taxonomy = builtin_taxonomy if builtin_taxonomy is not None else default_taxonomy()
    elif isinstance(raw_tax, dict):
        try:
            taxonomy = load_taxonomy(raw_tax)
        except TaxonomyError as exc:
            diags.append(Diagnostic("E-PARSE", f"inline taxonomy invalid: {exc}", ("taxonomy",)))
    else:
        diags.append(Diagnostic("E-PARSE", 'model document needs a "taxonomy" object'))

    def items(key: str) -> list:
        raw = document.get(key, [])
        if not isinstance(raw, list):
            diags.append(Diagnostic("E-PARSE", f'"{key}" must be a list'))
            return []
        return raw

    principles: dict[str, Principle] = {}
    for item in items("principles"):
        if not isinstance(item, dict) or not isinstance(item.get("id"), str) or not item["id"]:
            diags.append(Diagnostic("E-PARSE", "principle entry needs a string id"))
            continue
        pid = item["id"]
        if pid in principles:
            diags.append(Diagnostic("E-DUPLICATE-ID", f"duplicate principle id {pid}", (pid,)))
            continue
        principles[pid] = Principle(
            id=pid,
            name=item.get("name", pid) if isinstance(item.get("name", pid), str) else pid,
            description=item.get("description", "") if isinstance(item.get("description", ""), str) else "",
            provenance=_parse_provenance(item.get("provenance"), pid, diags),
        )

    practices: dict[str, Practice] = {}
    for item in items("practices"):
        if not isinstance(item, dict) or not isinstance(item.get("id"), str) or not item["id"]:
            diags.append(Diagnostic("E-PARSE", "practice entry needs a string id"))
            continue
        pid = item["id"]
        if pid in practices:
            diags.append(Diagnostic("E-DUPLICATE-ID", f"duplicate practice id {pid}", (pid,)))
            continue
        raw_principles = item.get("principles", [])
        if not isinstance(raw_principles, list) or not all(isinstance(x, str) for x in raw_principles):
            diags.append(Diagnostic("E-PARSE", f"principles of practice {pid} must be an id list", (pid,)))
            raw_principles = []
        practices[pid] = Practice(
            id=pid,
            name=item.get("name", pid) if isinstance(item.get("name", pid), str) else pid,
            description=item.get("description", "") if isinstance(item.get("description", ""), str) else "",
            principle_ids=tuple(raw_principles),
            dependency_groups=_parse_groups(item.get("depends"), pid, diags),
            provenance=_parse_provenance(item.get("provenance"), pid, diags),
        )

    benefits: dict[str, Benefit] = {}
    for item in items("benefits"):
        if not isinstance(item, dict) or not isinstance(item.get("id"), str) or not item["id"]:
            diags.append(Diagnostic("E-PARSE", "benefit entry needs a string id"))
            continue
        bid = item["id"]
        if bid in benefits:
            diags.append(Diagnostic("E-DUPLICATE-ID", f"duplicate benefit id {bid}", (bid,)))
            continue
        raw_paths = item.get("svm", [])
        paths: list[SvmPath] = []
        if not isinstance(raw_paths, list):
            diags.append(Diagnostic("E-PARSE", f"svm of benefit {bid} must be a path list", (bid,)))
            raw_paths = []
        for raw_path in raw_paths:
            if not isinstance(raw_path, str):
                diags.append(Diagnostic("E-SVM-PATH", f"benefit {bid} path must be a string", (bid,)))
                continue
            try:
                path = SvmPath.parse(raw_path)
            except ValueError as exc:
                diags.append(Diagnostic("E-SVM-PATH", f"benefit {bid} path invalid: {exc}", (bid,)))
                continue
            try:
                # Store the taxonomy's own spelling so canonical output does
                # not depend on how the author typed the path.
                path = SvmPath.parse(resolved_path_text(taxonomy, path))
            except Exception:
                pass  # left as typed; validate() reports the resolution miss
            paths.append(path)
        benefits[bid] = Benefit(
            id=bid,
            name=item.get("name", bid) if isinstance(item.get("name", bid), str) else bid,
            svm_paths=tuple(paths),
            provenance=_parse_provenance(item.get("provenance"), bid, diags),
        )

    edges: list[RealizationEdge] = []
    for item in items("realizes"):
        if not isinstance(item, dict) or not isinstance(item.get("practice"), str) or not isinstance(item.get("benefit"), str):
            diags.append(Diagnostic("E-PARSE", "realizes entry needs practice and benefit ids"))
            continue
        where = f"{item['practice']}->{item['benefit']}"
        edges.append(
            RealizationEdge(
                practice_id=item["practice"],
                benefit_id=item["benefit"],
                provenance=_parse_provenance(item.get("provenance"), where, diags),
                evidence=_parse_evidence(item.get("evidence"), where, diags),
            )
        )

    model = canonical_model(
        BdnModel(
            context=context,
            origin=origin,
            taxonomy=taxonomy,
            principles=principles,
            practices=practices,
            benefits=benefits,
            realization_edges=tuple(edges),
            taxonomy_ref=taxonomy_ref,
        )
    )
    all_diags = _sort_diagnostics(diags + [d for d in validate(model) if d.is_error])
    if any(d.is_error for d in all_diags):
        raise ModelDocumentError(all_diags)
    return model
