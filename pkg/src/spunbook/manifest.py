"""Versioned JSON manifests.

Every manifest is ``{"format_version": 1, "kind": <kind>, "data": {...}}``.
Serialization is canonical (sorted keys, two-space indent, trailing
newline) so that parse followed by serialize is the identity on canonical
text. Unknown keys are rejected at the top level and inside ``data``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

FORMAT_VERSION = 1

OPEN_BOOK_KEYS = {"genus", "letters", "label", "curves"}

SCHEMAS: dict[str, tuple[set[str], set[str]]] = {
    # kind: (required keys, optional keys)
    "open_book": ({"genus", "letters"}, {"label", "curves"}),
    "matrix": ({"rows"}, {"cols"}),
    "quadratic_form": ({"genus", "form"}, set()),
    "alphabet": ({"genus", "curves"}, set()),
    "certificate": (
        {"source", "target", "target_fibration", "path", "contact", "theorem_tag"},
        {"target_manifold", "preset", "collar_note", "normal_bundle", "notes"},
    ),
    "nongeneration": ({"alphabet", "form", "genus", "checks"}, {"arf", "convention"}),
    "obstruction": ({"source", "target", "matrix", "c1_source", "c1_target"}, {"label", "theorem_tag"}),
    "collar": (set(), {"s", "t", "f", "g", "name", "family", "b", "c"}),
    "ledger_request": ({"target", "genus"}, {"o"}),
}

NESTED = {
    ("certificate", "source"): OPEN_BOOK_KEYS,
}


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Manifest:
    kind: str
    data: dict

    def to_obj(self) -> dict:
        return {"format_version": FORMAT_VERSION, "kind": self.kind, "data": self.data}


def validate(obj: Any) -> Manifest:
    if not isinstance(obj, dict):
        raise ManifestError("manifest must be a JSON object")
    extra = set(obj) - {"format_version", "kind", "data"}
    if extra:
        raise ManifestError(f"unknown top-level fields: {', '.join(sorted(extra))}")
    if obj.get("format_version") != FORMAT_VERSION:
        raise ManifestError(f"unsupported format_version {obj.get('format_version')!r}; expected {FORMAT_VERSION}")
    kind = obj.get("kind")
    if kind not in SCHEMAS:
        raise ManifestError(f"unknown manifest kind {kind!r}; expected one of {', '.join(sorted(SCHEMAS))}")
    data = obj.get("data")
    if not isinstance(data, dict):
        raise ManifestError("manifest 'data' must be an object")
    required, optional = SCHEMAS[kind]
    missing = required - set(data)
    if missing:
        raise ManifestError(f"{kind} manifest is missing: {', '.join(sorted(missing))}")
    unknown = set(data) - required - optional
    if unknown:
        raise ManifestError(f"unknown fields in {kind} manifest: {', '.join(sorted(unknown))}")
    for (k, key), allowed in NESTED.items():
        if k == kind and isinstance(data.get(key), dict):
            bad = set(data[key]) - allowed
            if bad:
                raise ManifestError(f"unknown fields in {kind}.{key}: {', '.join(sorted(bad))}")
    return Manifest(kind, data)


def dumps(m: Manifest) -> str:
    return json.dumps(m.to_obj(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Manifest:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"not valid JSON: {exc}") from exc
    return validate(obj)


def load(path: str | Path) -> Manifest:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text)


def save(m: Manifest, path: str | Path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8")


def expect(m: Manifest, *kinds: str) -> Manifest:
    if m.kind not in kinds:
        raise ManifestError(f"expected a {' or '.join(kinds)} manifest, got {m.kind}")
    return m
