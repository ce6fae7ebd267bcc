"""Invariant checks over a Model; violations are returned as data."""

from __future__ import annotations

from collections import Counter

from .types import (IDENTIFIER_RE, AasField, ElementKind, Model, RecordType, ValidationReport,
                    Violation)

# stable violation codes
UNRESOLVED_TYPE = "UNRESOLVED_TYPE"
DUPLICATE_TYPE_NAME = "DUPLICATE_TYPE_NAME"
MISSING_VERSION = "MISSING_VERSION"
MISSING_SPEC_NUMBER = "MISSING_SPEC_NUMBER"
MISSING_VALUE_TYPE = "MISSING_VALUE_TYPE"
CONTAINER_WITHOUT_TYPE = "CONTAINER_WITHOUT_TYPE"
INVALID_TYPE_REF = "INVALID_TYPE_REF"
INVALID_KIND = "INVALID_KIND"
DUPLICATE_FIELD = "DUPLICATE_FIELD"
ILLEGAL_IDSHORT = "ILLEGAL_IDSHORT"
DUPLICATE_ENUM_LITERAL = "DUPLICATE_ENUM_LITERAL"
INVALID_SEMANTIC_ID = "INVALID_SEMANTIC_ID"
DUPLICATE_IMPORT = "DUPLICATE_IMPORT"


def validate_model(model: Model) -> ValidationReport:
    """Check every Model invariant; an empty report means the model is valid."""
    out: list[Violation] = []

    if model.version is None:
        out.append(Violation(MISSING_VERSION, "$", "model declares no specification version"))
    if not model.spec_number:
        out.append(Violation(MISSING_SPEC_NUMBER, "$", "model declares no specification number"))

    seen_specs = Counter(imp.spec_number for imp in model.imports)
    for spec, n in seen_specs.items():
        if n > 1:
            out.append(Violation(DUPLICATE_IMPORT, f"import {spec}",
                                 f"specification {spec} imported {n} times"))

    names = ([r.name for r in model.submodels] + [r.name for r in model.types]
             + [e.name for e in model.enums] + [n for imp in model.imports for n in imp.names])
    for name, n in Counter(names).items():
        if n > 1:
            out.append(Violation(DUPLICATE_TYPE_NAME, name, f"type name {name!r} declared {n} times"))

    records = {r.name: r for r in model.records()}
    enums = {e.name: e for e in model.enums}
    imported = set(model.imported_names())

    for r in model.submodels:
        if r.kind is not ElementKind.Submodel:
            out.append(Violation(INVALID_KIND, r.name, f"submodel has kind {r.kind.value}"))
    for r in model.types:
        if r.kind not in (ElementKind.SubmodelElementCollection, ElementKind.Entity):
            out.append(Violation(INVALID_KIND, r.name, f"type has non-container kind {r.kind.value}"))

    for r in model.records():
        out.extend(_check_record(r, records, enums, imported))

    for e in model.enums:
        for value, n in Counter(e.values).items():
            if n > 1:
                out.append(Violation(DUPLICATE_ENUM_LITERAL, e.name,
                                     f"literal value {value!r} appears {n} times"))
        for lname, n in Counter(lit.name for lit in e.literals).items():
            if n > 1:
                out.append(Violation(DUPLICATE_ENUM_LITERAL, e.name,
                                     f"literal name {lname!r} appears {n} times"))
    return ValidationReport(tuple(out))


def _check_record(r: RecordType, records, enums, imported) -> list[Violation]:
    out = []
    if r.semantic_id is not None:
        for p in r.semantic_id.problems():
            out.append(Violation(INVALID_SEMANTIC_ID, r.name, p))
    for base, n in Counter(f.id_short.base for f in r.fields).items():
        if n > 1:
            out.append(Violation(DUPLICATE_FIELD, f"{r.name}/{base}",
                                 f"field idShort {base!r} used {n} times"))
    for f in r.fields:
        out.extend(_check_field(r, f, records, enums, imported))
    return out


def _check_field(r: RecordType, f: AasField, records, enums, imported) -> list[Violation]:
    path = f"{r.name}/{f.id_short.base}"
    out = []
    if not IDENTIFIER_RE.match(f.id_short.base):
        out.append(Violation(ILLEGAL_IDSHORT, path, f"idShort {f.id_short.base!r} is not an identifier"))
    if f.kind is ElementKind.Submodel:
        out.append(Violation(INVALID_KIND, path, "a field cannot be a Submodel"))
    for sid in (f.semantic_id, *f.alternative_semantic_ids):
        if sid is not None:
            for p in sid.problems():
                out.append(Violation(INVALID_SEMANTIC_ID, path, p))

    ref = f.type_ref
    if ref is not None and ref not in records and ref not in enums and ref not in imported:
        out.append(Violation(UNRESOLVED_TYPE, path, f"type {ref!r} is not declared or imported"))
    elif f.kind.is_container:
        if ref is None:
            out.append(Violation(CONTAINER_WITHOUT_TYPE, path,
                                 f"{f.kind.value} field does not reference a record type"))
        elif ref in enums:
            out.append(Violation(INVALID_TYPE_REF, path, f"container field references enum {ref!r}"))
    elif ref is not None and ref in records:
        out.append(Violation(INVALID_TYPE_REF, path,
                             f"{f.kind.value} field references record type {ref!r}"))

    if f.kind is ElementKind.Property and f.value_type is None:
        out.append(Violation(MISSING_VALUE_TYPE, path, "Property has no value type"))
    return out
