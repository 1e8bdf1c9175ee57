"""Versioned JSON artifacts passed between pipeline stages."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any

from . import SCHEMA_VERSION


class ArtifactError(RuntimeError):
    """A stage input is missing or unreadable."""


class MissingArtifact(ArtifactError):
    def __init__(self, path: Path, stage: str):
        super().__init__(f"{stage}: missing corpus artifact {path} (run the earlier stage first)")
        self.path = path


class SchemaMismatch(ArtifactError):
    def __init__(self, path: Path, found: Any):
        super().__init__(
            f"{path}: schema version {found!r} is not supported (expected {SCHEMA_VERSION}); "
            "regenerate it by re-running the stage that wrote it with this version of the tool")


def write_json(path: str | os.PathLike, kind: str, data: Any, settings: Any = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "settings": settings, "data": data}
    path.write_text(json.dumps(doc, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    return path


def read_json(path: str | os.PathLike, kind: str, stage: str) -> tuple[Any, Any]:
    """(data, settings) of an artifact; raises MissingArtifact or SchemaMismatch."""
    path = Path(path)
    if not path.exists():
        raise MissingArtifact(path, stage)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaMismatch(path, doc.get("schema_version") if isinstance(doc, dict) else None)
    if doc.get("kind") != kind:
        raise ArtifactError(f"{path}: expected a {kind} artifact, found {doc.get('kind')!r}")
    return doc["data"], doc.get("settings")


def write_text(path: str | os.PathLike, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
