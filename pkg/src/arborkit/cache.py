"""Append-only JSONL cache of serialized towers, keyed by a content hash.

Every line is ``{"key": <sha256>, "kind": ..., "value": ...}``.  Lookups take
the first line for a key, so repeated appends of the same result are harmless.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def content_key(kind: str, text: str) -> str:
    return hashlib.sha256(f"{kind}\n{text}".encode()).hexdigest()


class JsonlCache:
    def __init__(self, path):
        self.path = Path(path)
        self._entries = {}
        if self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = json.loads(line)
                    except json.JSONDecodeError:
                        continue  # a torn final line from an interrupted run
                    self._entries.setdefault(rec["key"], rec["value"])

    def get(self, kind: str, text: str):
        return self._entries.get(content_key(kind, text))

    def put(self, kind: str, text: str, value):
        key = content_key(kind, text)
        if key in self._entries:
            return
        self._entries[key] = value
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps({"key": key, "kind": kind, "value": value}, sort_keys=True) + "\n")

    def __len__(self):
        return len(self._entries)
