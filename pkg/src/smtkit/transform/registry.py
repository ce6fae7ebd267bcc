"""Semantic-identifier registry built from previously transformed models."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import SmtkitError
from ..model import CanonicalValueType, Model, SemanticId, read_model

_FILE_RE = re.compile(r"^(\d+)-(\d+)-(\d+)\.smtm$")


@dataclass(frozen=True)
class RegistryEntry:
    spec_number: str
    version: tuple[int, int]
    name: str
    # "type" for record types, "field" for fields (name is "Record/field")
    role: str
    value_type: Optional[CanonicalValueType] = None
    type_ref: Optional[str] = None


@dataclass
class SemanticRegistry:
    entries: dict[str, list[RegistryEntry]] = field(default_factory=dict)
    models: dict[tuple[str, tuple[int, int]], Model] = field(default_factory=dict)
    pins: dict[str, tuple[int, int]] = field(default_factory=dict)

    @classmethod
    def load(cls, directory, pins: Optional[dict[str, tuple[int, int]]] = None) -> "SemanticRegistry":
        """Read every ``<spec>-<major>-<minor>.smtm`` file; a missing directory is empty."""
        reg = cls(pins=dict(pins or {}))
        d = Path(directory) if directory else None
        if d is None or not d.exists():
            return reg
        if not d.is_dir():
            raise SmtkitError("IO_ERROR", "registry path is not a directory", str(d))
        for path in sorted(d.iterdir()):
            if _FILE_RE.match(path.name):
                reg.add(read_model(path))
        return reg

    def add(self, model: Model) -> None:
        if model.version is None:
            return
        key = (model.spec_number, model.version)
        if key in self.models:
            self._forget(key)
        self.models[key] = model
        for rec in model.records():
            if rec.semantic_id is not None:
                self._put(rec.semantic_id, RegistryEntry(model.spec_number, model.version, rec.name,
                                                         "type"))
            for f in rec.fields:
                if f.semantic_id is None:
                    continue
                self._put(f.semantic_id, RegistryEntry(model.spec_number, model.version,
                                                       f"{rec.name}/{f.name}", "field",
                                                       f.value_type, f.type_ref))

    def _forget(self, key) -> None:
        for value, items in list(self.entries.items()):
            self.entries[value] = [e for e in items if (e.spec_number, e.version) != key]

    def _put(self, sid: SemanticId, entry: RegistryEntry) -> None:
        for value in {sid.value, sid.unversioned}:
            bucket = self.entries.setdefault(value, [])
            if entry not in bucket:
                bucket.append(entry)

    def lookup(self, sid: SemanticId, exclude_spec: Optional[str] = None,
               role: Optional[str] = None) -> Optional[RegistryEntry]:
        """Exact match first, then on the identifier without its version segment.

        Among several specification versions the highest wins unless the
        specification is pinned.
        """
        for value in (sid.value, sid.unversioned):
            found = [e for e in self.entries.get(value, ())
                     if e.spec_number != exclude_spec and (role is None or e.role == role)]
            found = [e for e in found
                     if e.spec_number not in self.pins or e.version == self.pins[e.spec_number]]
            if found:
                # types before fields, then highest version
                return max(found, key=lambda e: (e.role == "type", e.version))
        return None

    def model(self, spec_number: str, version: tuple[int, int]) -> Optional[Model]:
        return self.models.get((spec_number, version))

    def __len__(self) -> int:
        return len(self.models)
