"""Append-only review event log with periodic snapshots.

The JSONL append is the commit point; snapshots only shorten recovery.
A corrupt tail line is truncated at the last valid event and reported.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

SNAPSHOT_EVERY = 500
_SNAPSHOT_RE = re.compile(r"snapshot-(\d+)\.json$")


@dataclass
class RecoveryReport:
    recovered_events: int = 0
    truncated_line: int | None = None

    def to_dict(self) -> dict:
        return {"recovered_events": self.recovered_events, "truncated_line": self.truncated_line}


@dataclass
class EventLog:
    data_dir: Path
    recovery: RecoveryReport = field(default_factory=RecoveryReport)

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    @property
    def log_path(self) -> Path:
        return self.data_dir / "events.jsonl"

    def append(self, event: dict) -> None:
        with open(self.log_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def read_events(self, after_seq: int = 0) -> list[dict]:
        """All valid events with seq > after_seq; truncates a corrupt tail."""
        if not self.log_path.exists():
            return []
        events: list[dict] = []
        valid_bytes = 0
        truncated_at: int | None = None
        with open(self.log_path, "rb") as fh:
            for lineno, raw in enumerate(fh, start=1):
                try:
                    event = json.loads(raw.decode("utf-8"))
                    if "seq" not in event or "action" not in event:
                        raise ValueError("missing seq/action")
                except (ValueError, UnicodeDecodeError):
                    truncated_at = lineno
                    break
                valid_bytes += len(raw)
                events.append(event)
        if truncated_at is not None:
            with open(self.log_path, "r+b") as fh:
                fh.truncate(valid_bytes)
            self.recovery = RecoveryReport(len(events), truncated_at)
        else:
            self.recovery = RecoveryReport(len(events), None)
        return [e for e in events if e["seq"] > after_seq]

    def write_snapshot(self, seq: int, state: dict) -> None:
        path = self.data_dir / f"snapshot-{seq}.json"
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"seq": seq, "state": state}, fh, sort_keys=True)
        tmp.replace(path)

    def snapshots(self) -> list[int]:
        out = []
        for p in self.data_dir.iterdir():
            m = _SNAPSHOT_RE.search(p.name)
            if m:
                out.append(int(m.group(1)))
        return sorted(out)

    def latest_snapshot(self) -> tuple[int, dict] | None:
        seqs = self.snapshots()
        if not seqs:
            return None
        path = self.data_dir / f"snapshot-{seqs[-1]}.json"
        with open(path, "r", encoding="utf-8") as fh:
            blob = json.load(fh)
        return blob["seq"], blob["state"]
