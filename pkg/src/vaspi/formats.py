"""Serialization, DOT diagram export, and human-readable reporting.

Every export here is a deterministic function of its inputs: sorted keys,
canonical id order, 2-space indent, trailing newline.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .adoption import ADOPTED, NOT_ADOPTED, AdoptionState
from .assessment import (
    AssessmentReport,
    PlanStep,
    _benefit_status,
    FULLY_REALIZED,
    PARTIALLY_REALIZED,
)
from .graph import ValueSlice, enabled_set
from .model import BdnModel, Provenance, RealizationEdge
from .svm import taxonomy_to_document


def _dumps(document) -> str:
    return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _provenance_to_list(entries: tuple[Provenance, ...]) -> list[dict]:
    out = []
    for p in entries:
        item = {"kind": p.kind, "label": p.label}
        if p.note:
            item["note"] = p.note
        out.append(item)
    return out


def _edge_to_entry(edge: RealizationEdge) -> dict:
    return {
        "practice": edge.practice_id,
        "benefit": edge.benefit_id,
        "provenance": _provenance_to_list(edge.provenance),
        "evidence": [
            {"case": r.case, "observed": r.observed, "date": r.date, "note": r.note}
            for r in edge.evidence
        ],
    }


def model_to_document(model: BdnModel) -> dict:
    if model.taxonomy_ref:
        taxonomy = {"builtin": model.taxonomy_ref}
    else:
        taxonomy = taxonomy_to_document(model.taxonomy)
    return {
        "context": model.context,
        "origin": model.origin,
        "taxonomy": taxonomy,
        "principles": [
            {
                "id": p.id,
                "name": p.name,
                "description": p.description,
                "provenance": _provenance_to_list(p.provenance),
            }
            for p in (model.principles[k] for k in sorted(model.principles))
        ],
        "practices": [
            {
                "id": p.id,
                "name": p.name,
                "description": p.description,
                "principles": list(p.principle_ids),
                "depends": [
                    list(g.members)
                    if not g.provenance
                    else {"members": list(g.members), "provenance": _provenance_to_list(g.provenance)}
                    for g in p.dependency_groups
                ],
                "provenance": _provenance_to_list(p.provenance),
            }
            for p in (model.practices[k] for k in sorted(model.practices))
        ],
        "benefits": [
            {
                "id": b.id,
                "name": b.name,
                "svm": [path.text for path in b.svm_paths],
                "provenance": _provenance_to_list(b.provenance),
            }
            for b in (model.benefits[k] for k in sorted(model.benefits))
        ],
        "realizes": [
            _edge_to_entry(e)
            for e in sorted(model.realization_edges, key=lambda e: (e.practice_id, e.benefit_id))
        ],
    }


def serialize_model(model: BdnModel) -> str:
    """Canonical model document; parse_model(serialize_model(m)) == m."""
    return _dumps(model_to_document(model))


# ---------------------------------------------------------------------------
# DOT export


@dataclass(frozen=True)
class DotOptions:
    include_svm: bool = False  # group benefits under perspective clusters
    color_by_adoption: AdoptionState | None = None
    rankdir: str = "LR"


_DOT_UNSAFE = re.compile(r"[^A-Za-z0-9]")


def _mangle_ids(ids: list[str]) -> dict[str, str]:
    """DOT node names: non-alphanumerics become "_"; collisions get a
    numeric suffix so the mapping stays injective."""
    mangled: dict[str, str] = {}
    taken: set[str] = set()
    for raw in sorted(ids):
        base = _DOT_UNSAFE.sub("_", raw)
        name = base
        n = 2
        while name in taken:
            name = f"{base}_{n}"
            n += 1
        mangled[raw] = name
        taken.add(name)
    return mangled


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(model: BdnModel, options: DotOptions | None = None) -> str:
    """Fig-style combined view: practices as boxes, benefits as ellipses,
    solid dependency edges (prerequisite to dependent) and dashed
    realization edges, optionally clustered by value perspective and
    colored by adoption state."""
    options = options or DotOptions()
    names = _mangle_ids(list(model.practices) + list(model.benefits))

    practice_attrs: dict[str, str] = {}
    benefit_attrs: dict[str, str] = {}
    if options.color_by_adoption is not None:
        adoption = options.color_by_adoption
        enabled = enabled_set(model, adoption)
        for pid in model.practices:
            status = adoption.status_of(pid)
            groups = model.practices[pid].dependency_groups
            deps_met = not groups or any(set(g.members) <= enabled for g in groups)
            if pid in enabled:
                practice_attrs[pid] = ', style=filled, fillcolor=green'
            elif status == ADOPTED:
                practice_attrs[pid] = ', style=filled, fillcolor=orange'
            elif status == NOT_ADOPTED and deps_met:
                practice_attrs[pid] = ', color=blue, penwidth=2'
            else:
                practice_attrs[pid] = ', style=filled, fillcolor=gray'
        for bid in model.benefits:
            status = _benefit_status(model, enabled, bid).status
            if status == FULLY_REALIZED:
                benefit_attrs[bid] = ', style=filled, fillcolor=green'
            elif status == PARTIALLY_REALIZED:
                benefit_attrs[bid] = ', style=filled, fillcolor=orange'
            else:
                benefit_attrs[bid] = ', style=filled, fillcolor=gray'

    lines = ["digraph bdn {", f"  rankdir={options.rankdir};"]
    for pid in sorted(model.practices):
        label = _quote(model.practices[pid].name)
        lines.append(f"  {names[pid]} [label={label}, shape=box{practice_attrs.get(pid, '')}];")

    def benefit_line(bid: str, indent: str) -> str:
        label = _quote(model.benefits[bid].name)
        return f"{indent}{names[bid]} [label={label}, shape=ellipse{benefit_attrs.get(bid, '')}];"

    if options.include_svm:
        by_perspective: dict[str, list[str]] = {}
        for bid in sorted(model.benefits):
            paths = model.benefits[bid].svm_paths
            perspective = min(p.segments[0] for p in paths) if paths else "(unmapped)"
            by_perspective.setdefault(perspective, []).append(bid)
        cluster_names = _mangle_ids(list(by_perspective))
        for perspective in sorted(by_perspective):
            lines.append(f"  subgraph cluster_{cluster_names[perspective]} {{")
            lines.append(f"    label={_quote(perspective)};")
            for bid in by_perspective[perspective]:
                lines.append(benefit_line(bid, "    "))
            lines.append("  }")
    else:
        for bid in sorted(model.benefits):
            lines.append(benefit_line(bid, "  "))

    dep_edges = set()
    for pid in sorted(model.practices):
        for group in model.practices[pid].dependency_groups:
            for member in group.members:
                if member in model.practices:
                    dep_edges.add((member, pid))  # prerequisite -> dependent
    for src, dst in sorted(dep_edges):
        lines.append(f"  {names[src]} -> {names[dst]};")
    for edge in sorted(model.realization_edges, key=lambda e: (e.practice_id, e.benefit_id)):
        lines.append(f"  {names[edge.practice_id]} -> {names[edge.benefit_id]} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# report export


def report_to_document(report: AssessmentReport) -> dict:
    return {
        "enabled": list(report.enabled),
        "inconsistent": list(report.inconsistent),
        "frontier": list(report.frontier),
        "in_progress": list(report.in_progress),
        "benefits": [
            {
                "benefit": s.benefit_id,
                "status": s.status,
                "active_realizers": list(s.active_realizers),
                "inactive_realizers": list(s.inactive_realizers),
            }
            for s in report.benefit_statuses
        ],
        "value_attainment": dict(report.value_attainment),
        "layer_coverage": [
            {
                "layer": c.layer,
                "practices": list(c.practices),
                "enabled_fraction": c.enabled_fraction,
            }
            for c in report.layer_coverage
        ],
        "recommendations": [
            {"practice": pid, "improves": count} for pid, count in report.recommendations
        ],
        "generated_at": report.generated_at,
    }


def _md_list(ids) -> list[str]:
    return [f"- {x}" for x in ids] if ids else ["- (none)"]


def _report_markdown(report: AssessmentReport) -> str:
    lines = ["# Assessment"]
    if report.generated_at:
        lines.append(f"Generated at: {report.generated_at}")
    lines += ["", "## Enabled"]
    lines += _md_list(report.enabled)
    if report.in_progress:
        lines += ["", "In progress:"] + _md_list(report.in_progress)
    if report.inconsistent:
        lines += ["", "Adopted but blocked (dependencies unmet):"] + _md_list(report.inconsistent)
    lines += ["", "## Frontier"]
    lines += _md_list(report.frontier)
    lines += ["", "## Benefits", "| Benefit | Status | Active realizers | Inactive realizers |", "| --- | --- | --- | --- |"]
    for s in report.benefit_statuses:
        lines.append(
            f"| {s.benefit_id} | {s.status} | {', '.join(s.active_realizers) or '-'} | "
            f"{', '.join(s.inactive_realizers) or '-'} |"
        )
    lines += ["", "## Value Attainment", "| Value path | Score |", "| --- | --- |"]
    for path, score in report.value_attainment.items():
        lines.append(f"| {path} | {score:.2f} |")
    lines += ["", "## Layer Coverage", "| Layer | Enabled | Practices |", "| --- | --- | --- |"]
    for c in report.layer_coverage:
        lines.append(f"| {c.layer} | {c.enabled_fraction:.2f} | {', '.join(c.practices)} |")
    lines += ["", "## Recommendations"]
    if report.recommendations:
        lines += ["| Practice | Benefits improved |", "| --- | --- |"]
        for pid, count in report.recommendations:
            lines.append(f"| {pid} | {count} |")
    else:
        lines.append("- (none)")
    return "\n".join(lines) + "\n"


def export_report(report: AssessmentReport, format: str = "json") -> str:
    if format == "json":
        return _dumps(report_to_document(report))
    if format == "markdown":
        return _report_markdown(report)
    raise ValueError(f"unknown report format {format!r}")


# ---------------------------------------------------------------------------
# plans and slices


def plan_to_document(steps: list[PlanStep], target: str, mode: str) -> dict:
    return {
        "target": target,
        "mode": mode,
        "steps": [
            {"order": s.order, "practice": s.practice_id, "unlocks": list(s.unlocks)} for s in steps
        ],
    }


def serialize_plan(steps: list[PlanStep], target: str, mode: str) -> str:
    return _dumps(plan_to_document(steps, target, mode))


def slice_to_document(slice_: ValueSlice) -> dict:
    return {
        "anchor": slice_.anchor,
        "benefits": list(slice_.benefits),
        "realizing_practices": list(slice_.realizing_practices),
        "closure_practices": list(slice_.closure_practices),
        "realization_edges": [{"practice": p, "benefit": b} for p, b in slice_.realization_edges],
    }


def serialize_slice(slice_: ValueSlice) -> str:
    return _dumps(slice_to_document(slice_))
