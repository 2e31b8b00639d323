"""Command-line entry point. Machine output goes to stdout, diagnostics to
stderr; exit codes: 0 ok, 1 validation/domain errors, 2 usage or IO errors."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .adoption import AdoptionState, parse_adoption
from .assessment import MODE_FULL, MODE_PARTIAL, AssessmentConfig, assess, plan, recommend_next
from .errors import ModelDocumentError, ParseError, VaspiError
from .formats import (
    DotOptions,
    export_dot,
    export_report,
    serialize_model,
    serialize_plan,
    serialize_slice,
)
from .graph import layering, trace_benefit, trace_value
from .merge import AliasTable, add_evidence, load_aliases, match_models, merge_models
from .model import BdnModel, Diagnostic, EvidenceRecord, parse_model, validate
from .svm import SvmTaxonomy, load_taxonomy

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


def _use_color(stream) -> bool:
    return stream.isatty() and not os.environ.get("NO_COLOR")


def _print_diagnostics(diags: list[Diagnostic], stream=None) -> None:
    stream = stream or sys.stderr
    color = _use_color(stream)
    for d in diags:
        text = str(d)
        if color:
            code = "31" if d.is_error else "33"  # red errors, yellow warnings
            text = f"\x1b[{code}m{text}\x1b[0m"
        print(text, file=stream)


def _env_taxonomy() -> SvmTaxonomy | None:
    """VASPI_TAXONOMY points at a taxonomy file that overrides the builtin."""
    path = os.environ.get("VASPI_TAXONOMY")
    if not path:
        return None
    with open(path, encoding="utf-8") as handle:
        return load_taxonomy(handle.read())


def _load_model(path: str) -> BdnModel:
    with open(path, encoding="utf-8") as handle:
        return parse_model(handle.read(), builtin_taxonomy=_env_taxonomy())


def _load_adoption(path: str | None) -> AdoptionState:
    if path is None:
        return AdoptionState()
    with open(path, encoding="utf-8") as handle:
        return parse_adoption(handle.read())


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vaspi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model document, print diagnostics")
    p.add_argument("model")
    p.add_argument("--strict", action="store_true", help="treat warnings as failures")

    p = sub.add_parser("layers", help="dependency layers of the model's practices")
    p.add_argument("model")

    p = sub.add_parser("trace", help="trace a value anchor or benefit to its practices")
    p.add_argument("model")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--value", help="value-map path, e.g. 'Customer/Perceived value'")
    group.add_argument("--benefit", help="benefit id")

    p = sub.add_parser("assess", help="maturity assessment of an adoption state")
    p.add_argument("model")
    p.add_argument("--adoption", help="adoption state file (default: nothing adopted)")
    p.add_argument("--partial-weight", type=float, default=0.5)
    p.add_argument("--format", choices=["json", "markdown"], default="json")

    p = sub.add_parser("plan", help="ordered steps to reach a benefit or value anchor")
    p.add_argument("model")
    p.add_argument("--adoption")
    p.add_argument("--target", required=True, help="benefit id or value-map path")
    p.add_argument("--full", action="store_true", help="plan for all realizers, not the cheapest one")

    p = sub.add_parser("recommend", help="frontier practices ranked by benefit impact")
    p.add_argument("model")
    p.add_argument("--adoption")
    p.add_argument("-k", type=int, default=5)

    p = sub.add_parser("merge", help="merge two models into a joint model")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--aliases", help="alias table file")
    p.add_argument("-o", "--out", required=True, help="output path ('-' for stdout)")

    evidence = sub.add_parser("evidence", help="evolve a model with observed outcomes")
    esub = evidence.add_subparsers(dest="evidence_command", required=True)
    p = esub.add_parser("add", help="append an observation to a realization edge")
    p.add_argument("model")
    p.add_argument("--practice", required=True)
    p.add_argument("--benefit", required=True)
    p.add_argument("--case", required=True, help="case label, e.g. c1")
    p.add_argument("--observed", required=True, choices=["true", "false"])
    p.add_argument("--date", required=True, help="ISO-8601 date")
    p.add_argument("--note", default="")
    p.add_argument("-o", "--out", required=True)

    export = sub.add_parser("export", help="diagram export")
    xsub = export.add_subparsers(dest="export_command", required=True)
    p = xsub.add_parser("dot", help="DOT graph of practices, benefits, and edges")
    p.add_argument("model")
    p.add_argument("--adoption", help="color nodes by this adoption state")
    p.add_argument("--svm-clusters", action="store_true", help="cluster benefits by value perspective")

    p = sub.add_parser("serve", help="serve the model and explorer UI over HTTP")
    p.add_argument("model")
    p.add_argument("--adoption", help="adoption file, persisted on every change")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors", action="store_true", help="allow cross-origin requests")
    p.add_argument("--ui", help="directory of built explorer UI assets")
    return parser


def _cmd_validate(args) -> int:
    try:
        model = _load_model(args.model)
    except ModelDocumentError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_VALIDATION
    diags = validate(model)
    _print_diagnostics(diags)
    if any(d.is_error for d in diags):
        return EXIT_VALIDATION
    if args.strict and diags:
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_trace(args) -> int:
    model = _load_model(args.model)
    slice_ = trace_value(model, args.value) if args.value else trace_benefit(model, args.benefit)
    sys.stdout.write(serialize_slice(slice_))
    return EXIT_OK


def _cmd_assess(args) -> int:
    model = _load_model(args.model)
    adoption = _load_adoption(args.adoption)
    config = AssessmentConfig(partial_weight=args.partial_weight)
    sys.stdout.write(export_report(assess(model, adoption, config), format=args.format))
    return EXIT_OK


def _cmd_plan(args) -> int:
    model = _load_model(args.model)
    adoption = _load_adoption(args.adoption)
    mode = MODE_FULL if args.full else MODE_PARTIAL
    steps = plan(model, adoption, args.target, AssessmentConfig(plan_target_mode=mode))
    sys.stdout.write(serialize_plan(steps, args.target, mode))
    return EXIT_OK


def _cmd_recommend(args) -> int:
    model = _load_model(args.model)
    adoption = _load_adoption(args.adoption)
    ranked = recommend_next(model, adoption, args.k) if args.k >= 1 else []
    document = [{"practice": pid, "improves": count} for pid, count in ranked]
    sys.stdout.write(json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_merge(args) -> int:
    left = _load_model(args.left)
    right = _load_model(args.right)
    aliases = AliasTable()
    if args.aliases:
        with open(args.aliases, encoding="utf-8") as handle:
            aliases = load_aliases(handle.read())
    report = match_models(left, right, aliases)
    merged = merge_models(left, right, report, aliases=aliases)
    _write_out(serialize_model(merged), args.out)
    return EXIT_OK


def _cmd_evidence_add(args) -> int:
    model = _load_model(args.model)
    record = EvidenceRecord(
        case=args.case, observed=args.observed == "true", date=args.date, note=args.note
    )
    updated = add_evidence(model, (args.practice, args.benefit), record)
    _write_out(serialize_model(updated), args.out)
    return EXIT_OK


def _cmd_export_dot(args) -> int:
    model = _load_model(args.model)
    options = DotOptions(
        include_svm=args.svm_clusters,
        color_by_adoption=_load_adoption(args.adoption) if args.adoption else None,
    )
    sys.stdout.write(export_dot(model, options))
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve  # deferred: pulls in the HTTP stack

    serve(
        model_path=args.model,
        adoption_path=args.adoption,
        host=args.host,
        port=args.port,
        cors=args.cors,
        ui_dir=args.ui,
    )
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "layers":
            model = _load_model(args.model)
            sys.stdout.write(json.dumps(layering(model), ensure_ascii=False, indent=2) + "\n")
            return EXIT_OK
        if args.command == "trace":
            return _cmd_trace(args)
        if args.command == "assess":
            return _cmd_assess(args)
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "recommend":
            return _cmd_recommend(args)
        if args.command == "merge":
            return _cmd_merge(args)
        if args.command == "evidence":
            return _cmd_evidence_add(args)
        if args.command == "export":
            return _cmd_export_dot(args)
        if args.command == "serve":
            return _cmd_serve(args)
        parser.error(f"unknown command {args.command!r}")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelDocumentError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_VALIDATION
    except VaspiError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
