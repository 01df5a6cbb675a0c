"""Stage telemetry shared by every pipeline run.

Pipelines receive an optional :class:`Reporter` and write through a
:class:`StageRecorder` bound to their method and seed. Experiments share one
process-wide reporter (:func:`get_reporter`) whose events the CLI tails live and
exports as CSV or JSON.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
import threading
from collections import Counter
from collections.abc import Iterable
from dataclasses import asdict, dataclass
from datetime import UTC, datetime
from pathlib import Path

CSV_FIELDS = ("timestamp", "run", "method", "stage", "action", "seed", "meta")


@dataclass(frozen=True, slots=True)
class Event:
    timestamp: str
    run: str
    method: str
    stage: str
    action: str
    seed: int | None
    meta: dict[str, object]

    def meta_text(self) -> str:
        """``key=value`` pairs joined by ``;`` for one CSV cell."""
        if isinstance(self.meta, dict):
            return ";".join(f"{k}={v}" for k, v in self.meta.items())
        return str(self.meta)


class Reporter:
    """Append-only, thread-safe event log."""

    def __init__(self) -> None:
        self._events: list[Event] = []
        self._lock = threading.Lock()
        # events already written by a non-overwriting write_csv
        self._flushed = 0

    def record(
        self,
        run: str,
        method: str,
        stage: str,
        action: str,
        seed: int | None = None,
        meta: dict | None = None,
    ) -> Event:
        event = Event(
            timestamp=datetime.now(UTC).isoformat(),
            run=run,
            method=method,
            stage=stage,
            action=action,
            seed=seed,
            meta=dict(meta or {}),
        )
        with self._lock:
            self._events.append(event)
        return event

    def bind(self, method: str, seed: int) -> StageRecorder:
        return StageRecorder(self, method, seed)

    def snapshot(self) -> list[Event]:
        with self._lock:
            return list(self._events)

    def to_dicts(self) -> list[dict]:
        return [asdict(e) for e in self.snapshot()]

    def count(self) -> int:
        with self._lock:
            return len(self._events)

    def clear(self) -> None:
        with self._lock:
            self._events.clear()
            self._flushed = 0

    def write_csv(self, path: str | Path, overwrite: bool = True) -> Path:
        """Write events to ``path``.

        With ``overwrite=False`` an existing file only receives the events recorded
        since the previous call, without a second header.
        """
        p = Path(path).expanduser()
        p.parent.mkdir(parents=True, exist_ok=True)
        append = not overwrite and p.exists()
        events = self.snapshot()
        pending = events[self._flushed :] if append else events

        with p.open("a" if append else "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
            if not append:
                writer.writeheader()
            for e in pending:
                writer.writerow({**asdict(e), "meta": e.meta_text()})
        self._flushed = len(events)
        return p

    def write_json(self, path: str | Path) -> Path:
        """Write all events plus per-stage counts as one JSON document, replaced atomically."""
        p = Path(path).expanduser()
        p.parent.mkdir(parents=True, exist_ok=True)
        events = self.snapshot()
        document = {
            "events": [asdict(e) for e in events],
            "stages": [
                {"method": m, "stage": s, "action": a, "count": n} for (m, s, a), n in sorted(stage_counts(events).items())
            ],
        }
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=f".{p.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(document, fh, indent=2, default=str)
            os.replace(tmp, p)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return p


@dataclass(frozen=True, slots=True)
class StageRecorder:
    """``record(stage, action, **meta)`` for one pipeline run; a no-op without a reporter."""

    reporter: Reporter | None
    method: str
    seed: int

    def __call__(self, stage: str, action: str, **meta: object) -> Event | None:
        if self.reporter is None:
            return None
        return self.reporter.record(
            run=f"seed={self.seed}", method=self.method, stage=stage, action=action, seed=self.seed, meta=meta
        )


def stage_recorder(reporter: Reporter | None, method: str, seed: int) -> StageRecorder:
    return StageRecorder(reporter, method, seed)


def stage_counts(events: Iterable[Event]) -> Counter[tuple[str, str, str]]:
    """Occurrences of each ``(method, stage, action)``."""
    return Counter((e.method, e.stage, e.action) for e in events)


_reporter: Reporter | None = None


def get_reporter() -> Reporter:
    global _reporter
    if _reporter is None:
        _reporter = Reporter()
    return _reporter
