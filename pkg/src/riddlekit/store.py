"""Directory-backed riddle store: one JSON file per record plus an index.

Each record carries the riddle, its precomputed answer set, creation
metadata, the KB content digest it was computed against, and an integrity
digest over the payload. Records computed against an older KB are loaded
with ``stale=True``; tampered files raise CorruptRecord.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import CorruptRecord
from .generator import Riddle, riddle_from_dict, riddle_to_dict
from .validator import AnswerSet


@dataclass(frozen=True)
class StoredRecord:
    riddle: Riddle
    answers: tuple[str, ...]  # sorted
    created: str
    kb_digest: str
    stale: bool = False

    def answer_set(self) -> AnswerSet:
        return AnswerSet(
            riddle_id=self.riddle.id, answers=frozenset(self.answers), intended=self.riddle.intended
        )


def _payload_digest(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class RiddleStore:
    """Single-writer persistent map riddle_id -> StoredRecord."""

    def __init__(self, directory, kb_digest: str):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.kb_digest = kb_digest
        self._lock = threading.Lock()
        self._index_path = self.directory / "index.json"

    def _record_path(self, riddle_id: str) -> Path:
        return self.directory / f"{riddle_id}.json"

    def save(self, riddle: Riddle, answers: AnswerSet) -> StoredRecord:
        record = StoredRecord(
            riddle=riddle,
            answers=tuple(sorted(answers.answers)),
            created=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            kb_digest=self.kb_digest,
        )
        payload = {
            "riddle": riddle_to_dict(riddle),
            "answers": list(record.answers),
            "created": record.created,
            "kb_digest": record.kb_digest,
        }
        envelope = {"record": payload, "digest": _payload_digest(payload)}
        with self._lock:
            self._record_path(riddle.id).write_text(
                json.dumps(envelope, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )
            index = self._read_index()
            index[riddle.id] = {"genre": riddle.genre.value, "created": record.created}
            self._index_path.write_text(
                json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
        return record

    def load(self, riddle_id: str) -> StoredRecord:
        path = self._record_path(riddle_id)
        if not path.exists():
            raise KeyError(riddle_id)
        envelope = json.loads(path.read_text(encoding="utf-8"))
        payload = envelope.get("record", {})
        if _payload_digest(payload) != envelope.get("digest"):
            raise CorruptRecord(f"record {riddle_id} failed its integrity check")
        return StoredRecord(
            riddle=riddle_from_dict(payload["riddle"]),
            answers=tuple(payload["answers"]),
            created=payload["created"],
            kb_digest=payload["kb_digest"],
            stale=payload["kb_digest"] != self.kb_digest,
        )

    def __contains__(self, riddle_id: str) -> bool:
        return self._record_path(riddle_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(self._read_index())

    def _read_index(self) -> dict:
        if not self._index_path.exists():
            return {}
        return json.loads(self._index_path.read_text(encoding="utf-8"))
