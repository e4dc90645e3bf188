"""Domain model: NLI samples, lifecycle states, and corpus interchange (JSONL)."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from enum import Enum

from .text import tokenize

LABELS = ("entailment", "neutral", "contradiction")
SPLITS = ("train", "dev", "test")
PROVENANCES = ("manual", "autofix", "textfooler")


class State(str, Enum):
    DRAFT = "Draft"
    EVALUATED = "Evaluated"
    PENDING = "Pending"
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"
    REPAIRED_ACCEPTED = "RepairedAccepted"


class ValidationError(ValueError):
    """Per-field validation failure list."""

    def __init__(self, errors: list[dict]):
        self.errors = errors
        super().__init__("; ".join(f"{e['field']}: {e['message']}" for e in errors))


@dataclass
class HistoryEntry:
    text: str
    provenance: str  # manual | autofix | textfooler
    timestamp: float = field(default_factory=time.time)


@dataclass
class Sample:
    id: str
    premise: str
    hypothesis: str
    label: str
    split: str = "train"
    state: State = State.DRAFT
    author: str = ""
    history: list[HistoryEntry] = field(default_factory=list)

    def __post_init__(self):
        if isinstance(self.state, str):
            self.state = State(self.state)
        if not self.history:
            self.history = [HistoryEntry(self.hypothesis, "manual")]

    def validate(self) -> list[dict]:
        """Field errors preventing the sample from leaving Draft."""
        errors = []
        if not tokenize(self.premise):
            errors.append({"field": "premise", "message": "empty after tokenization"})
        if not tokenize(self.hypothesis):
            errors.append({"field": "hypothesis", "message": "empty after tokenization"})
        if self.label not in LABELS:
            errors.append({"field": "label", "message": f"unknown label {self.label!r}"})
        if self.split not in SPLITS:
            errors.append({"field": "split", "message": f"unknown split {self.split!r}"})
        return errors

    def with_hypothesis(
        self, text: str, provenance: str, timestamp: float | None = None
    ) -> "Sample":
        """New sample with ``text`` appended to history; original untouched."""
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        entry = (
            HistoryEntry(text, provenance)
            if timestamp is None
            else HistoryEntry(text, provenance, timestamp)
        )
        return Sample(
            id=self.id,
            premise=self.premise,
            hypothesis=text,
            label=self.label,
            split=self.split,
            state=self.state,
            author=self.author,
            history=list(self.history) + [entry],
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["state"] = self.state.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Sample":
        history = [HistoryEntry(**h) for h in d.get("history", [])]
        return cls(
            id=d["id"],
            premise=d["premise"],
            hypothesis=d["hypothesis"],
            label=d["label"],
            split=d.get("split", "train"),
            state=State(d.get("state", "Draft")),
            author=d.get("author", ""),
            history=history,
        )


def write_jsonl(samples: list[Sample], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            fh.write(json.dumps(s.to_dict(), sort_keys=True) + "\n")


def read_jsonl(path) -> list[Sample]:
    """Parse corpus interchange JSONL; ValueError names the offending line."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(Sample.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
    return out
