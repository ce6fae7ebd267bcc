"""Rule-based checks over extracted specifications and models."""

from __future__ import annotations

import re
from typing import Callable, Iterator, Union

from ..errors import Finding, Location, Severity
from ..extracted import ExtractedSpec, RawFieldRow, RawTypeDef
from ..grid.cells import cardinality_notation
from ..grid.valuetypes import lookup_type
from ..model import ElementKind, Model, parse_version
from ..model.types import IDENTIFIER_RE
from ..transform.passes import classify_note

RULES: dict[str, tuple[Severity, str]] = {
    "MISSING_SPEC_VERSION": (Severity.ERROR, "the specification states no version"),
    "MISSING_CARDINALITY": (Severity.WARNING, "no cardinality given"),
    "MISSING_VALUE_TYPE": (Severity.WARNING, "no value type given"),
    "MISSING_SEMANTICID": (Severity.WARNING, "no semanticId given"),
    "MIXED_CARDINALITY_NOTATION": (Severity.WARNING, "several cardinality notations in one source"),
    "TYPE_FALLBACK": (Severity.WARNING, "value type not recognized, String assumed"),
    "ILLEGAL_IDSHORT": (Severity.WARNING, "idShort is not a legal identifier"),
    "UNSEPARATED_CELL_CONTENT": (Severity.INFO, "semanticId and description shared one run"),
    "INSTANTIATED_IN_TEMPLATE": (Severity.WARNING, "template carries instance values"),
    "NOTE_WITHOUT_FLAG": (Severity.INFO, "note matched no interpretation pattern"),
}

# element kinds that carry a value type
_TYPED_KINDS = frozenset({ElementKind.Property, ElementKind.Range})

Subject = Union[ExtractedSpec, Model]


def _emit(code: str, source: str, path: str, detail: str = "") -> Finding:
    severity, text = RULES[code]
    return Finding(code, severity, Location(source, path), f"{text}: {detail}" if detail else text)


_OR_RE = re.compile(r"\s+or\s+")


def _legal_row_name(name: str) -> bool:
    # "A or B" cells are split into legal names by the transformation
    return all(IDENTIFIER_RE.match(part) for part in _OR_RE.split(name.strip()))


def _head(note: str) -> str:
    lines = note.strip().splitlines()
    return lines[0] if lines else ""


def row_path(d: RawTypeDef, row: RawFieldRow) -> str:
    return row.location or f"{d.name}/{row.name}"


def def_path(d: RawTypeDef) -> str:
    return d.location or d.name


def _lint_spec(spec: ExtractedSpec) -> Iterator[Finding]:
    src = spec.source
    if parse_version(spec.version) is None:
        yield _emit("MISSING_SPEC_VERSION", src, "", spec.spec_number or src)
    notations: dict[tuple[str, str], str] = {}
    for d in spec.defs:
        if d.semantic_id is None:
            yield _emit("MISSING_SEMANTICID", src, def_path(d), d.name)
        if not IDENTIFIER_RE.match(d.name):
            yield _emit("ILLEGAL_IDSHORT", src, def_path(d), repr(d.name))
        if d.instantiated:
            yield _emit("INSTANTIATED_IN_TEMPLATE", src, def_path(d), d.name)
        for note in d.notes:
            if classify_note(note) is None:
                yield _emit("NOTE_WITHOUT_FLAG", src, def_path(d), _head(note))
        for row in d.rows:
            path = row_path(d, row)
            if row.cardinality is None:
                yield _emit("MISSING_CARDINALITY", src, path, row.name)
            elif row.cardinality_cell.strip():
                style, marker = cardinality_notation(row.cardinality_cell)
                notations.setdefault(("style", style), path)
                if marker:
                    notations.setdefault(("marker", marker), path)
            if row.kind in _TYPED_KINDS and not (row.value_type_raw or "").strip() \
                    and row.value_type is None:
                yield _emit("MISSING_VALUE_TYPE", src, path, row.name)
            raw = (row.value_type_raw or "").strip()
            if raw and row.kind in _TYPED_KINDS and lookup_type(raw) is None:
                yield _emit("TYPE_FALLBACK", src, path, repr(raw))
            if row.semantic_id is None:
                yield _emit("MISSING_SEMANTICID", src, path, row.name)
            if not _legal_row_name(row.name):
                yield _emit("ILLEGAL_IDSHORT", src, path, repr(row.name))
            if "UNSEPARATED" in row.heals:
                yield _emit("UNSEPARATED_CELL_CONTENT", src, path, row.name)
            if row.instantiated:
                yield _emit("INSTANTIATED_IN_TEMPLATE", src, path, row.name)
            for note in row.notes:
                if classify_note(note) is None:
                    yield _emit("NOTE_WITHOUT_FLAG", src, path, _head(note))
    styles = sorted(k[1] for k in notations if k[0] == "style")
    markers = sorted(k[1] for k in notations if k[0] == "marker")
    for kind, seen in (("style", styles), ("marker", markers)):
        if len(seen) > 1:
            # anchor at the first row using the second notation
            yield _emit("MIXED_CARDINALITY_NOTATION", src, notations[(kind, seen[1])],
                        " and ".join(seen))


def _lint_model(model: Model) -> Iterator[Finding]:
    src = model.spec_number
    if model.version is None:
        yield _emit("MISSING_SPEC_VERSION", src, "", model.spec_number)
    for rec in model.records():
        if rec.semantic_id is None:
            yield _emit("MISSING_SEMANTICID", src, rec.name, rec.name)
        for note in rec.notes:
            if classify_note(note) is None:
                yield _emit("NOTE_WITHOUT_FLAG", src, rec.name, _head(note))
        for f in rec.fields:
            path = f"{rec.name}/{f.name}"
            if f.kind in _TYPED_KINDS and f.value_type is None and f.type_ref is None:
                yield _emit("MISSING_VALUE_TYPE", src, path, f.name)
            elif f.value_type is not None and f.value_type.raw.strip() \
                    and f.kind in _TYPED_KINDS and lookup_type(f.value_type.raw) is None:
                yield _emit("TYPE_FALLBACK", src, path, repr(f.value_type.raw))
            if f.semantic_id is None:
                yield _emit("MISSING_SEMANTICID", src, path, f.name)
            if f.id_short.display_name:
                yield _emit("ILLEGAL_IDSHORT", src, path, repr(f.id_short.display_name))
            for note in f.notes:
                if classify_note(note) is None:
                    yield _emit("NOTE_WITHOUT_FLAG", src, path, _head(note))


def lint(subject: Subject) -> list[Finding]:
    """All rule violations in ``subject``, deduplicated and ordered by location then code."""
    check: Callable[[Subject], Iterator[Finding]] = (
        _lint_model if isinstance(subject, Model) else _lint_spec)
    unique = {(f.location, f.code, f.message): f for f in check(subject)}
    return sorted(unique.values(), key=Finding.sort_key)


def location_exists(subject: Subject, path: str) -> bool:
    """True when ``path`` names the document itself or an element of ``subject``."""
    if path == "":
        return True
    if isinstance(subject, Model):
        rec_name, _, field_name = path.partition("/")
        rec = subject.record(rec_name)
        return rec is not None and (not field_name or rec.field(field_name) is not None)
    for d in subject.defs:
        if path == def_path(d) or any(path == row_path(d, r) for r in d.rows):
            return True
    return False
