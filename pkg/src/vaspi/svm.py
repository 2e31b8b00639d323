"""Software Value Map taxonomy: the perspective/aspect/component hierarchy
that benefits are classified against, plus path resolution and file I/O.

Taxonomies are immutable after construction and safe to share between
concurrent readers.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import DepthExceeded, DuplicateSibling, ParseError, PathNotFound

LEVELS = ("Perspective", "Aspect", "SubAspect", "Component")
MAX_DEPTH = 4

_WS_RUN = re.compile(r"\s+")


def canonical_key(name: str) -> str:
    """Normalize a name for matching: lowercase, trimmed, whitespace runs
    collapsed, trailing "." / "," stripped. Interior punctuation is kept, so
    "physical value wrt. time" only loses case/spacing noise.
    """
    key = _WS_RUN.sub(" ", name.strip()).lower()
    return key.rstrip(".,").strip()


@dataclass(frozen=True)
class SvmPath:
    """A slash-separated location in the value map, 1-4 segments deep."""

    segments: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.segments) <= MAX_DEPTH:
            raise ValueError(f"path must have 1..{MAX_DEPTH} segments, got {len(self.segments)}")
        cleaned = tuple(s.strip() for s in self.segments)
        if any(not s for s in cleaned):
            raise ValueError(f"path has empty segment: {self.segments!r}")
        object.__setattr__(self, "segments", cleaned)

    @classmethod
    def parse(cls, text: str) -> "SvmPath":
        return cls(tuple(text.split("/")))

    @property
    def text(self) -> str:
        return "/".join(self.segments)

    @property
    def canonical(self) -> tuple[str, ...]:
        return tuple(canonical_key(s) for s in self.segments)

    def descends_from(self, other: "SvmPath") -> bool:
        """True when self equals other or sits below it (canonical compare)."""
        mine, theirs = self.canonical, other.canonical
        return len(mine) >= len(theirs) and mine[: len(theirs)] == theirs

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SvmNode:
    name: str
    level: str  # one of LEVELS, derived from depth
    children: tuple["SvmNode", ...] = ()


@dataclass(frozen=True)
class SvmTaxonomy:
    version: str
    perspectives: tuple[SvmNode, ...]

    def resolve(self, path: SvmPath | str) -> SvmNode:
        return resolve_path(self, path)


def _build_node(entry, depth: int, trail: str) -> SvmNode:
    if not isinstance(entry, dict):
        raise ParseError(f"taxonomy node at {trail or 'root'} must be an object")
    name = entry.get("name")
    if not isinstance(name, str) or not canonical_key(name):
        raise ParseError(f"taxonomy node at {trail or 'root'} needs a non-empty name")
    here = f"{trail}/{name}" if trail else name
    if depth > MAX_DEPTH:
        raise DepthExceeded(f"node {here!r} exceeds maximum depth {MAX_DEPTH}")
    raw_children = entry.get("children", [])
    if not isinstance(raw_children, list):
        raise ParseError(f"children of {here!r} must be a list")
    if depth == MAX_DEPTH and raw_children:
        raise DepthExceeded(f"component node {here!r} cannot have children")
    children = tuple(_build_node(c, depth + 1, here) for c in raw_children)
    seen: set[str] = set()
    for child in children:
        key = canonical_key(child.name)
        if key in seen:
            raise DuplicateSibling(f"duplicate sibling {child.name!r} under {here!r}")
        seen.add(key)
    return SvmNode(name=name.strip(), level=LEVELS[depth - 1], children=children)


def load_taxonomy(document: str | dict) -> SvmTaxonomy:
    """Parse a taxonomy document (JSON text or an already-decoded object).

    Raises ParseError, DuplicateSibling or DepthExceeded on bad input.
    """
    if isinstance(document, str):
        if not document.strip():
            raise ParseError("empty taxonomy document")
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"taxonomy document is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ParseError("taxonomy document must be a JSON object")
    version = document.get("version")
    if not isinstance(version, str):
        raise ParseError('taxonomy document needs a string "version"')
    raw = document.get("perspectives")
    if not isinstance(raw, list):
        raise ParseError('taxonomy document needs a "perspectives" list')
    roots = tuple(_build_node(entry, 1, "") for entry in raw)
    seen: set[str] = set()
    for root in roots:
        key = canonical_key(root.name)
        if key in seen:
            raise DuplicateSibling(f"duplicate perspective {root.name!r}")
        seen.add(key)
    return SvmTaxonomy(version=version, perspectives=roots)


def _node_to_entry(node: SvmNode) -> dict:
    return {"name": node.name, "children": [_node_to_entry(c) for c in node.children]}


def taxonomy_to_document(taxonomy: SvmTaxonomy) -> dict:
    return {
        "version": taxonomy.version,
        "perspectives": [_node_to_entry(p) for p in taxonomy.perspectives],
    }


def serialize_taxonomy(taxonomy: SvmTaxonomy) -> str:
    """Canonical text form: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(taxonomy_to_document(taxonomy), ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _resolve_chain(taxonomy: SvmTaxonomy, path: SvmPath) -> list[SvmNode]:
    chain: list[SvmNode] = []
    siblings = taxonomy.perspectives
    for segment in path.segments:
        key = canonical_key(segment)
        found = next((n for n in siblings if canonical_key(n.name) == key), None)
        if found is None:
            prefix = "/".join(n.name for n in chain)
            raise PathNotFound(path.text, prefix)
        chain.append(found)
        siblings = found.children
    return chain


def resolve_path(taxonomy: SvmTaxonomy, path: SvmPath | str) -> SvmNode:
    """Return the node the path points at; matching is case- and
    whitespace-insensitive. PathNotFound reports the deepest matched prefix.
    """
    if isinstance(path, str):
        path = SvmPath.parse(path)
    return _resolve_chain(taxonomy, path)[-1]


def resolved_path_text(taxonomy: SvmTaxonomy, path: SvmPath | str) -> str:
    """The path rewritten with the taxonomy's own spelling of each segment."""
    if isinstance(path, str):
        path = SvmPath.parse(path)
    return "/".join(n.name for n in _resolve_chain(taxonomy, path))


def list_components(taxonomy: SvmTaxonomy, prefix: SvmPath | str) -> list[SvmPath]:
    """All component-level paths at or below the prefix, sorted canonically."""
    if isinstance(prefix, str):
        prefix = SvmPath.parse(prefix)
    chain = _resolve_chain(taxonomy, prefix)
    base = tuple(n.name for n in chain)
    found: list[SvmPath] = []

    def walk(node: SvmNode, trail: tuple[str, ...]):
        if node.level == "Component":
            found.append(SvmPath(trail))
            return
        for child in node.children:
            walk(child, trail + (child.name,))

    walk(chain[-1], base)
    found.sort(key=lambda p: p.canonical)
    return found


_DEFAULT_DOCUMENT = {
    "version": "svm-default",
    "perspectives": [
        {"name": "Financial", "children": []},
        {
            "name": "Customer",
            "children": [
                {
                    "name": "Perceived value",
                    "children": [
                        {
                            "name": "Intrinsic value",
                            "children": [
                                {"name": "functionality", "children": []},
                                {"name": "reliability", "children": []},
                                {"name": "usability", "children": []},
                            ],
                        },
                        {
                            "name": "Delivery process value",
                            "children": [{"name": "process w.r.t. time", "children": []}],
                        },
                    ],
                },
                {
                    "name": "Customer lifetime value",
                    "children": [
                        {
                            "name": "Revenue",
                            "children": [{"name": "upselling revenue", "children": []}],
                        }
                    ],
                },
            ],
        },
        {
            "name": "Internal Business Process",
            "children": [
                {
                    "name": "production value",
                    "children": [
                        {"name": "market requirement value", "children": []},
                        {"name": "physical value wrt. time", "children": []},
                    ],
                }
            ],
        },
        {
            "name": "Innovation and learning",
            "children": [
                {
                    "name": "value of technology",
                    "children": [
                        {"name": "human capital value", "children": []},
                        {"name": "customer capital value", "children": []},
                        {"name": "market value size", "children": []},
                    ],
                }
            ],
        },
    ],
}


def default_taxonomy() -> SvmTaxonomy:
    """The built-in value map: the four standard perspectives, populated
    where the source catalogue spells out the subtree. Organizations extend
    it by shipping their own taxonomy document.
    """
    return load_taxonomy(_DEFAULT_DOCUMENT)
