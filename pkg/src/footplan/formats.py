"""JSON document schemas, canonical serialization, and validation.

All documents carry ``format_version``.  Canonical form (sorted keys, no
extra whitespace) makes round-trips bit-exact and lets records be compared
directly, modulo wall-clock fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import FormatError
from .signature import Word, parse_word, render_word

FORMAT_VERSION = 1


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def check_version(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise FormatError(f"{kind} document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(
            f"{kind} document has format_version {version!r}, expected {FORMAT_VERSION}")
    return doc


def load_world_doc(path: str | Path) -> dict:
    doc = check_version(load_json(path), "world")
    if "surfaces" not in doc:
        raise FormatError("world document lacks 'surfaces'")
    return doc


def parse_polyline(raw: Any) -> list[tuple[tuple[float, float], int]]:
    if not isinstance(raw, list) or not raw:
        raise FormatError("polyline must be a non-empty list of [x, y, surface]")
    out = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise FormatError(f"polyline point {item!r} must be [x, y, surface]")
        x, y, sid = item
        out.append(((float(x), float(y)), int(sid)))
    return out


def polyline_doc(polyline: list[tuple[tuple[float, float], int]]) -> list:
    return [[x, y, sid] for (x, y), sid in polyline]


def load_path_doc(path: str | Path) -> list[tuple[tuple[float, float], int]]:
    doc = check_version(load_json(path), "path")
    return parse_polyline(doc.get("polyline"))


@dataclass
class ReferencePath:
    id: str
    polyline: list[tuple[tuple[float, float], int]]
    word: Word
    h_word: Word

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "polyline": polyline_doc(self.polyline),
            "word": render_word(self.word),
            "h_word": render_word(self.h_word),
        }


def make_reference_path(world, path_id: str,
                        polyline: list[tuple[tuple[float, float], int]]) -> ReferencePath:
    from .signature import path_signature, reduce_word
    word = path_signature(polyline, world)
    return ReferencePath(path_id, polyline, word, reduce_word(word, world))


def load_refpaths_doc(path: str | Path, world) -> list[ReferencePath]:
    doc = check_version(load_json(path), "reference paths")
    paths = doc.get("paths")
    if not isinstance(paths, list):
        raise FormatError("reference paths document lacks 'paths'")
    out = []
    for i, entry in enumerate(paths):
        if not isinstance(entry, dict):
            raise FormatError(f"paths[{i}] must be an object")
        pid = str(entry.get("id", f"p{i + 1}"))
        out.append(make_reference_path(world, pid, parse_polyline(entry.get("polyline"))))
    return out


def load_query_doc(path: str | Path) -> dict:
    doc = check_version(load_json(path), "query")
    if "start" not in doc or "goal" not in doc:
        raise FormatError("query document needs 'start' and 'goal'")
    return doc


_TIMING_KEYS = ("heuristic_build_ms", "search_ms", "wall_time_ms")


def strip_timings(record: dict) -> dict:
    """Record with wall-clock fields removed, for parity comparisons."""
    return {k: v for k, v in record.items() if k not in _TIMING_KEYS}
