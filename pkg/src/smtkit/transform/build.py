"""The transformation pipeline from ExtractedSpec to a validated Model."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..errors import Finding, Location, Severity, SmtkitError
from ..extracted import ExtractedSpec, RawFieldRow, RawTypeDef, Rename
from ..model import (AasField, Cardinality, ElementKind, Import, Model, RecordType, parse_version,
                     validate_model)
from .passes import (default_value_types, extract_enums, interpret_notes, merge_fragments,
                     normalize_value_types, resolve_semantic_ids, split_or_idshorts,
                     synthesize_missing_types, uniquify_names)
from .registry import SemanticRegistry

_SEM_VERSION_RE = re.compile(r"/(\d+)/(\d+)(?:/|$)")


@dataclass
class TransformResult:
    model: Model
    spec: ExtractedSpec
    findings: list[Finding] = field(default_factory=list)
    renames: list[Rename] = field(default_factory=list)


def run_passes(spec: ExtractedSpec, registry: Optional[SemanticRegistry] = None) -> ExtractedSpec:
    """Apply every rewriting pass in pipeline order."""
    registry = registry or SemanticRegistry()
    s = normalize_value_types(spec)
    s = split_or_idshorts(s)
    s = merge_fragments(s)
    s = interpret_notes(s)
    s = extract_enums(s)
    s = resolve_semantic_ids(s, registry)
    s = default_value_types(s)
    s = synthesize_missing_types(s)
    s = uniquify_names(s)
    return s


def _version(spec: ExtractedSpec) -> tuple[Optional[tuple[int, int]], Optional[str]]:
    v = parse_version(spec.version)
    if v is not None:
        return v, None
    for d in spec.submodel_defs:
        if d.semantic_id is not None:
            m = _SEM_VERSION_RE.search(d.semantic_id.value)
            if m:
                return (int(m.group(1)), int(m.group(2))), d.semantic_id.value
    return None, None


def _field(row: RawFieldRow, names: dict[str, str], spec: ExtractedSpec) -> AasField:
    type_ref = row.type_ref
    if row.type_key is not None:
        type_ref = names.get(row.type_key, type_ref)
    card = row.cardinality
    if card is None:
        card = Cardinality(1, 1)
        spec.add_finding("CARDINALITY_DEFAULTED", Severity.INFO, row.location,
                         f"{row.name} states no cardinality; 1..1 assumed")
    value_type = None if row.kind.is_container else row.value_type
    return AasField(
        id_short=row.id_short, kind=row.kind, value_type=value_type, type_ref=type_ref,
        semantic_id=row.semantic_id, alternative_semantic_ids=tuple(row.alternative_semantic_ids),
        cardinality=card, description=row.description, notes=tuple(row.notes),
        examples=tuple(row.examples), allows_user_id_short=row.allows_user_id_short,
        advisory=tuple(row.advisory))


def _record(d: RawTypeDef, names: dict[str, str], spec: ExtractedSpec) -> RecordType:
    return RecordType(name=d.name, kind=d.kind, semantic_id=d.semantic_id,
                      description=d.description,
                      fields=tuple(_field(r, names, spec) for r in d.rows),
                      allows_user_id_short=d.allows_user_id_short, notes=tuple(d.notes),
                      advisory=tuple(d.advisory))


def construct_model(spec: ExtractedSpec) -> Model:
    version, from_semantic = _version(spec)
    if from_semantic:
        spec.add_finding("VERSION_FROM_SEMANTICID", Severity.INFO, "",
                         f"version taken from {from_semantic}")
    names = {d.key: d.name for d in spec.defs}
    submodels = tuple(_record(d, names, spec) for d in spec.defs if d.kind is ElementKind.Submodel)
    types = tuple(_record(d, names, spec) for d in spec.defs if d.kind is not ElementKind.Submodel)
    imports = tuple(Import(i.spec_number, tuple(i.version), tuple(i.names)) for i in spec.imports)
    return Model(spec_number=spec.spec_number, version=version, title=spec.title,
                 imports=imports, submodels=submodels, types=types, enums=tuple(spec.enums))


def transform(spec: ExtractedSpec, registry: Optional[SemanticRegistry] = None) -> TransformResult:
    """Run all passes and build the Model; raises TRANSFORM_FAILED on violations."""
    final = run_passes(spec, registry)
    model = construct_model(final)
    report = validate_model(model)
    if not report.ok:
        summary = "; ".join(str(v) for v in list(report)[:5])
        raise SmtkitError("TRANSFORM_FAILED", f"model violates {len(report)} invariant(s): {summary}",
                          spec.source, detail=report)
    new_findings = final.findings[len(spec.findings):]
    return TransformResult(model, final, new_findings, list(final.renames))


def build_model(spec: ExtractedSpec, registry: Optional[SemanticRegistry] = None) -> Model:
    return transform(spec, registry).model
