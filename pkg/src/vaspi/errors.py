"""Exception hierarchy shared across the toolkit.

Exceptions that correspond to machine-readable diagnostic codes carry the
code in ``.code`` so the CLI and the HTTP service can surface it verbatim.
"""

from __future__ import annotations


class VaspiError(Exception):
    """Base class for all toolkit errors."""

    code = "E-ERROR"


class TaxonomyError(VaspiError):
    """Base class for taxonomy document problems."""

    code = "E-TAXONOMY"


class ParseError(TaxonomyError):
    """Document is not well-formed (bad JSON, missing keys, wrong types)."""

    code = "E-PARSE"


class DuplicateSibling(TaxonomyError):
    """Two siblings share the same canonical name."""

    code = "E-DUPLICATE-SIBLING"


class DepthExceeded(TaxonomyError):
    """A taxonomy node sits deeper than the component level."""

    code = "E-DEPTH-EXCEEDED"


class PathNotFound(VaspiError):
    """A value-map path does not resolve; remembers how far matching got."""

    code = "E-PATH-NOT-FOUND"

    def __init__(self, path: str, matched_prefix: str):
        self.path = path
        self.matched_prefix = matched_prefix
        if matched_prefix:
            msg = f"path {path!r} not found (deepest match: {matched_prefix!r})"
        else:
            msg = f"path {path!r} not found"
        super().__init__(msg)


class ModelDocumentError(VaspiError):
    """Raised when a model document fails validation with E-* diagnostics.

    Carries the complete diagnostic list, not just the first defect.
    """

    code = "E-MODEL"

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        errors = [d for d in self.diagnostics if d.is_error]
        summary = "; ".join(f"{d.code} {d.message}" for d in errors[:5])
        if len(errors) > 5:
            summary += f" (+{len(errors) - 5} more)"
        super().__init__(f"model document invalid: {summary}")


class UnknownPractice(VaspiError):
    code = "E-UNKNOWN-PRACTICE"

    def __init__(self, practice_ids):
        ids = sorted(practice_ids) if not isinstance(practice_ids, str) else [practice_ids]
        self.practice_ids = ids
        super().__init__(f"unknown practice id(s): {', '.join(ids)}")


class UnknownBenefit(VaspiError):
    code = "E-UNKNOWN-BENEFIT"

    def __init__(self, benefit_id: str):
        self.benefit_id = benefit_id
        super().__init__(f"unknown benefit id: {benefit_id}")


class UnknownEdge(VaspiError):
    code = "E-UNKNOWN-EDGE"

    def __init__(self, practice_id: str, benefit_id: str):
        self.practice_id = practice_id
        self.benefit_id = benefit_id
        super().__init__(f"no realization edge ({practice_id} -> {benefit_id})")


class UnreachableTarget(VaspiError):
    code = "E-UNREACHABLE-TARGET"

    def __init__(self, benefit_id: str):
        self.benefit_id = benefit_id
        super().__init__(f"benefit {benefit_id} has no realizing practice")


class MergeCycle(VaspiError):
    code = "E-MERGE-CYCLE"

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"merged dependency structure is cyclic: {' -> '.join(self.cycle)}")


class TaxonomyMismatch(VaspiError):
    code = "E-TAXONOMY-MISMATCH"
