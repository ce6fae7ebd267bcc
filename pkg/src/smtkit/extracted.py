"""Source-faithful capture of a parsed specification.

Both ingest paths (table grids and AASX packages) produce an
``ExtractedSpec``. Every row keeps the verbatim cell text next to the parsed
results so that heuristics can be audited. The transformation passes work on
copies of this structure and fill in the derived attributes (links, enum
references, imports, flags) before the final ``Model`` is built.
"""

from __future__ import annotations

import copy
import dataclasses
import enum
import json
import types
import typing
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import Finding, Location, Severity, SmtkitError
from .model.types import (CanonicalValueType, Cardinality, ElementKind, EnumType,
                          ExampleValue, IdShortSpec, SemanticId)


@dataclass
class RawFieldRow:
    id_short_cell: str
    semantic_cell: str = ""
    value_cell: str = ""
    cardinality_cell: str = ""
    location: str = ""
    id_short: IdShortSpec = IdShortSpec("")
    kind: ElementKind = ElementKind.Property
    kind_raw: Optional[str] = None
    semantic_id: Optional[SemanticId] = None
    identifiers: list[SemanticId] = field(default_factory=list)
    description: str = ""
    notes: list[str] = field(default_factory=list)
    value_type_raw: Optional[str] = None
    examples: list[ExampleValue] = field(default_factory=list)
    cardinality: Optional[Cardinality] = None
    heals: list[str] = field(default_factory=list)
    instantiated: bool = False
    # filled by linking and the transformation passes
    type_key: Optional[str] = None
    type_ref: Optional[str] = None
    value_type: Optional[CanonicalValueType] = None
    alternative_semantic_ids: list[SemanticId] = field(default_factory=list)
    allows_user_id_short: bool = False
    advisory: list[str] = field(default_factory=list)
    from_fragment: Optional[str] = None

    @property
    def name(self) -> str:
        return self.id_short.base

    def cells(self) -> tuple[str, str, str, str]:
        return (self.id_short_cell, self.semantic_cell, self.value_cell, self.cardinality_cell)


@dataclass
class RawTypeDef:
    key: str
    name: str
    id_short: IdShortSpec = IdShortSpec("")
    kind: ElementKind = ElementKind.SubmodelElementCollection
    semantic_id: Optional[SemanticId] = None
    description: str = ""
    notes: list[str] = field(default_factory=list)
    attributes: dict[str, str] = field(default_factory=dict)
    rows: list[RawFieldRow] = field(default_factory=list)
    parent: Optional[str] = None
    parent_key: Optional[str] = None
    fragment_targets: list[str] = field(default_factory=list)
    location: str = ""
    instantiated: bool = False
    allows_user_id_short: bool = False
    advisory: list[str] = field(default_factory=list)

    @property
    def is_fragment(self) -> bool:
        return bool(self.fragment_targets)


@dataclass
class ImportRef:
    spec_number: str
    version: tuple[int, int]
    names: list[str] = field(default_factory=list)


@dataclass
class Rename:
    scope: str
    old: str
    new: str


@dataclass
class ExtractedSpec:
    spec_number: str = ""
    title: str = ""
    version: str = ""
    source: str = ""
    provenance: str = "grid"
    dialect: str = ""
    defs: list[RawTypeDef] = field(default_factory=list)
    enums: list[EnumType] = field(default_factory=list)
    imports: list[ImportRef] = field(default_factory=list)
    renames: list[Rename] = field(default_factory=list)
    findings: list[Finding] = field(default_factory=list)

    @property
    def submodel_defs(self) -> list[RawTypeDef]:
        return [d for d in self.defs if d.kind is ElementKind.Submodel]

    @property
    def type_defs(self) -> list[RawTypeDef]:
        return [d for d in self.defs if d.kind is not ElementKind.Submodel]

    def rows(self):
        for d in self.defs:
            for r in d.rows:
                yield d, r

    def row_count(self) -> int:
        return sum(len(d.rows) for d in self.defs)

    def def_by_key(self, key: str) -> Optional[RawTypeDef]:
        for d in self.defs:
            if d.key == key:
                return d
        return None

    def defs_named(self, name: str) -> list[RawTypeDef]:
        return [d for d in self.defs if d.name == name]

    def add_finding(self, code: str, severity: Severity, path: str, message: str) -> None:
        self.findings.append(Finding(code, severity, Location(self.source, path), message))

    def copy(self) -> "ExtractedSpec":
        return copy.deepcopy(self)


# JSON sidecar round trip. Frozen model values and enums are encoded through
# their dataclass fields and enum values; decoding is driven by type hints.

def _encode(obj):
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: _encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (list, tuple)):
        return [_encode(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    return obj


def _decode(tp, data):
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if origin in (typing.Union, getattr(types, "UnionType", typing.Union)):
        if data is None:
            return None
        inner = [a for a in args if a is not type(None)]
        return _decode(inner[0], data)
    if origin in (list, tuple):
        if origin is tuple and len(args) == 2 and args[1] is Ellipsis:
            return tuple(_decode(args[0], x) for x in data)
        if origin is tuple:
            return tuple(_decode(a, x) for a, x in zip(args, data))
        return [_decode(args[0], x) for x in data]
    if origin is dict:
        return {k: _decode(args[1], v) for k, v in data.items()}
    if isinstance(tp, type) and issubclass(tp, enum.Enum):
        return tp(data)
    if dataclasses.is_dataclass(tp):
        hints = typing.get_type_hints(tp)
        kwargs = {}
        for f in dataclasses.fields(tp):
            if f.name in data:
                kwargs[f.name] = _decode(hints[f.name], data[f.name])
        return tp(**kwargs)
    return data


def spec_to_json(spec: ExtractedSpec) -> str:
    return json.dumps(_encode(spec), ensure_ascii=False, indent=1, sort_keys=False) + "\n"


def spec_from_json(text: str) -> ExtractedSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SmtkitError("MALFORMED_EXTRACTED", exc.msg, f"line {exc.lineno}") from None
    if not isinstance(data, dict):
        raise SmtkitError("MALFORMED_EXTRACTED", "top level must be an object")
    try:
        return _decode(ExtractedSpec, data)
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        raise SmtkitError("MALFORMED_EXTRACTED", str(exc)) from None


def write_spec(spec: ExtractedSpec, path) -> None:
    try:
        Path(path).write_text(spec_to_json(spec), encoding="utf-8")
    except OSError as exc:
        raise SmtkitError("IO_ERROR", str(exc), str(path)) from exc


def read_spec(path) -> ExtractedSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SmtkitError("IO_ERROR", str(exc), str(path)) from exc
    return spec_from_json(text)


__all__ = ["ExtractedSpec", "ImportRef", "RawFieldRow", "RawTypeDef", "Rename", "read_spec",
           "spec_from_json", "spec_to_json", "write_spec"]
