"""Per-organization adoption state: which practices are adopted, in
progress, or not adopted. The assessment input."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .errors import ParseError, UnknownPractice
from .model import BdnModel

NOT_ADOPTED = "not_adopted"
IN_PROGRESS = "in_progress"
ADOPTED = "adopted"
STATUSES = (NOT_ADOPTED, IN_PROGRESS, ADOPTED)


@dataclass(frozen=True)
class AdoptionState:
    context: str = ""
    statuses: dict[str, str] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)
    timestamp: str = ""  # ISO-8601

    def status_of(self, practice_id: str) -> str:
        # Absent key means not adopted.
        return self.statuses.get(practice_id, NOT_ADOPTED)

    def with_status(self, practice_id: str, status: str, timestamp: str | None = None) -> "AdoptionState":
        if status not in STATUSES:
            raise ValueError(f"invalid adoption status {status!r}")
        statuses = dict(self.statuses)
        statuses[practice_id] = status
        return replace(self, statuses=statuses, timestamp=self.timestamp if timestamp is None else timestamp)


def check_adoption(model: BdnModel, adoption: AdoptionState) -> None:
    """Raise UnknownPractice when the adoption references ids the model
    does not define."""
    unknown = sorted(set(adoption.statuses) - set(model.practices))
    unknown += sorted(set(adoption.notes) - set(model.practices) - set(unknown))
    if unknown:
        raise UnknownPractice(unknown)


def parse_adoption(document: str | dict) -> AdoptionState:
    if isinstance(document, str):
        if not document.strip():
            raise ParseError("empty adoption document")
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"adoption document is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ParseError("adoption document must be a JSON object")
    statuses = document.get("statuses", {})
    if not isinstance(statuses, dict):
        raise ParseError('"statuses" must map practice ids to statuses')
    for pid, status in statuses.items():
        if status not in STATUSES:
            raise ParseError(f"invalid status {status!r} for practice {pid!r}")
    notes = document.get("notes", {})
    if not isinstance(notes, dict) or not all(isinstance(v, str) for v in notes.values()):
        raise ParseError('"notes" must map practice ids to strings')
    return AdoptionState(
        context=document.get("context", "") if isinstance(document.get("context", ""), str) else "",
        statuses=dict(sorted(statuses.items())),
        notes=dict(sorted(notes.items())),
        timestamp=document.get("timestamp", "") if isinstance(document.get("timestamp", ""), str) else "",
    )


def adoption_to_document(adoption: AdoptionState) -> dict:
    return {
        "context": adoption.context,
        "timestamp": adoption.timestamp,
        "statuses": dict(sorted(adoption.statuses.items())),
        "notes": dict(sorted(adoption.notes.items())),
    }


def serialize_adoption(adoption: AdoptionState) -> str:
    return json.dumps(adoption_to_document(adoption), ensure_ascii=False, indent=2, sort_keys=True) + "\n"
