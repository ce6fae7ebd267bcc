"""Table grid to ExtractedSpec: the automated part of the document path."""

from __future__ import annotations

import re
from collections import Counter
from pathlib import Path
from typing import Optional

from ..errors import Finding, Location, Severity, SmtkitError
from ..extracted import ExtractedSpec, RawFieldRow, RawTypeDef
from ..model.types import ElementKind, ExampleValue, IdShortSpec
from .cells import (analyze_semantic_cell, analyze_value_cell, parse_cardinality,
                    parse_id_short_cell, split_kind_prefix)
from .loader import TableGrid, load_grid
from .tables import SpecTable, TableKind, detect_tables, key_of, rejoin_rows
from .valuetypes import lookup_kind, lookup_type

_APPLIES_RE = re.compile(r"^\s*applies\s*to\s*:?\s*(.+)$", re.IGNORECASE | re.DOTALL)
_SPEC_NUMBER_RE = re.compile(r"(?<!\d)(\d{5})(?!\d)")


def _targets(text: str) -> list[str]:
    return [t.strip() for t in re.split(r",|;|\band\b|\n", text) if t.strip()]


class _Extractor:
    def __init__(self, source: str):
        self.spec = ExtractedSpec(source=source, provenance="grid")
        self.current: Optional[RawTypeDef] = None
        self.counter = Counter()

    def finding(self, code: str, severity: Severity, path: str, message: str) -> None:
        self.spec.findings.append(Finding(code, severity, Location(self.spec.source, path), message))

    # -- header tables

    def header(self, table: SpecTable) -> None:
        attrs: dict[str, str] = {}
        for key, value in table.body_rows:
            k = key_of(key)
            attrs[k] = f"{attrs[k]}\n{value}" if k in attrs else value
        if "idshort" not in attrs:
            self.document(attrs)
            return

        spec, _ = parse_id_short_cell(attrs["idshort"])
        kind: Optional[ElementKind] = None
        for k in ("class", "kind"):
            if k in attrs:
                kind = lookup_kind(attrs[k])
        if kind is None or not kind.is_container:
            kind = ElementKind.Submodel if not self.spec.defs else ElementKind.SubmodelElementCollection

        sem = analyze_semantic_cell(attrs.get("semanticid", ""))
        description = attrs.get("explanation") or attrs.get("description") or sem.description
        notes: list[str] = list(sem.notes)
        targets: list[str] = []
        if "appliesto" in attrs:
            targets = _targets(attrs["appliesto"])
        for k in ("note", "notes"):
            if k in attrs:
                m = _APPLIES_RE.match(attrs[k])
                if m:
                    targets = _targets(m.group(1))
                else:
                    notes.append(" ".join(attrs[k].split()))

        self.counter[spec.base] += 1
        d = RawTypeDef(
            key=f"{spec.base}#{self.counter[spec.base]}", name=spec.base, id_short=spec, kind=kind,
            semantic_id=sem.semantic_id, description=" ".join(description.split()), notes=notes,
            attributes=dict(attrs), parent=(attrs.get("parent") or "").strip() or None,
            fragment_targets=targets, location=table.location(0))
        self.spec.defs.append(d)
        self.current = d
        if kind is ElementKind.Submodel and "version" in attrs and not self.spec.version:
            self.spec.version = attrs["version"].strip()
        self.document(attrs, header_only=True)

    def document(self, attrs: dict[str, str], header_only: bool = False) -> None:
        if not header_only and attrs.get("version") and not self.spec.version:
            self.spec.version = attrs["version"].strip()
        if attrs.get("title") and not self.spec.title:
            self.spec.title = " ".join(attrs["title"].split())
        for k in ("number", "specification"):
            m = _SPEC_NUMBER_RE.search(attrs.get(k, ""))
            if m and not self.spec.spec_number:
                self.spec.spec_number = m.group(1)

    # -- field tables

    def fields(self, table: SpecTable) -> None:
        try:
            table = rejoin_rows(table)
        except SmtkitError as exc:
            self.finding(exc.code, Severity.WARNING, exc.location, exc.message)
            # drop the orphan rows and keep the rest
            body = list(table.body_rows)
            idx = list(table.body_row_indices)
            while body and not body[0][0].strip():
                body.pop(0)
                idx.pop(0)
            table = rejoin_rows(SpecTable(table.kind, table.header_rows, tuple(body),
                                          table.origin_sheet, table.origin_row_index, tuple(idx)))
        if self.current is None:
            name = "Submodel"
            self.current = RawTypeDef(key=f"{name}#0", name=name, id_short=IdShortSpec(name),
                                      kind=ElementKind.Submodel, location=table.location(0))
            self.spec.defs.append(self.current)
            self.finding("ROWS_WITHOUT_HEADER", Severity.WARNING, table.location(0),
                         "field table has no preceding header table; a submodel was synthesized")
        for n, cells in enumerate(table.body_rows):
            row = self.row(cells, table.location(n))
            if row is not None:
                self.current.rows.append(row)

    def row(self, cells: tuple[str, ...], where: str) -> Optional[RawFieldRow]:
        id_cell, sem_cell, value_cell, card_cell = cells
        kind_raw, rest = split_kind_prefix(id_cell)
        try:
            spec, inline = parse_id_short_cell(rest)
        except SmtkitError as exc:
            self.finding(exc.code, Severity.WARNING, where, exc.message)
            return None
        row = RawFieldRow(id_short_cell=id_cell, semantic_cell=sem_cell, value_cell=value_cell,
                          cardinality_cell=card_cell, location=where, id_short=spec)

        probe = analyze_value_cell(value_cell)
        kind = lookup_kind(kind_raw) if kind_raw else None
        raw_type = probe.raw_type
        if kind is None and raw_type is not None and lookup_kind(raw_type) is not None:
            kind, kind_raw = lookup_kind(raw_type), raw_type
            if lookup_type(raw_type) is None:
                raw_type = None
        row.kind = kind or ElementKind.Property
        row.kind_raw = kind_raw
        value = analyze_value_cell(value_cell, row.kind)
        row.value_type_raw = raw_type
        row.examples = [*(ExampleValue(x) for x in inline), *value.examples]

        sem = analyze_semantic_cell(sem_cell)
        row.semantic_id = sem.semantic_id
        row.description = sem.description
        row.notes = sem.notes
        row.identifiers = sem.identifiers
        if sem.url_healed:
            row.heals.append("URL_HEALED")
        if sem.unseparated:
            row.heals.append("UNSEPARATED")
        if "[u]*" in value.unit_forms:
            self.finding("UNIT_NOTATION_AMBIGUOUS", Severity.INFO, where,
                         "unit stated before the value; parsed like the bracket form")

        if card_cell.strip():
            try:
                row.cardinality = parse_cardinality(card_cell)
            except SmtkitError as exc:
                self.finding(exc.code, Severity.WARNING, where, exc.message)
        return row

    # -- linking container rows to their type definitions

    def link(self) -> None:
        spec = self.spec
        by_name: dict[str, list[RawTypeDef]] = {}
        for d in spec.defs:
            by_name.setdefault(d.name, []).append(d)
        for owner in spec.defs:
            for row in owner.rows:
                candidates = [d for d in by_name.get(row.name, []) if d.kind is not ElementKind.Submodel]
                explicit = row.kind_raw is not None
                if not candidates:
                    if row.kind.is_container:
                        self.finding("UNLINKED_CONTAINER", Severity.WARNING, row.location,
                                     f"no table defines the structure of {row.name!r}")
                    continue
                if explicit and not row.kind.is_container:
                    continue
                target = (next((d for d in candidates if d.parent == owner.name), None)
                          or next((d for d in candidates if d.parent_key is None and d is not owner
                                   and not d.is_fragment), None)
                          or candidates[0])
                row.type_key = target.key
                row.kind = target.kind
                if target.parent_key is None and target is not owner:
                    target.parent_key = owner.key


def extract_spec(grid: TableGrid, source: str = "") -> ExtractedSpec:
    """Detect tables, rejoin split rows and parse every cell of ``grid``."""
    ex = _Extractor(source)
    tables = detect_tables(grid, ex.spec.findings, source)
    if not tables:
        raise SmtkitError("NO_TABLES_FOUND", "grid contains no recognizable specification table",
                          source)
    for table in tables:
        if table.kind is TableKind.TwoColumn:
            ex.header(table)
        else:
            ex.fields(table)
    ex.link()
    if not ex.spec.spec_number:
        m = _SPEC_NUMBER_RE.search(Path(source).name) if source else None
        if m:
            ex.spec.spec_number = m.group(1)
    if not ex.spec.title and ex.spec.submodel_defs:
        ex.spec.title = ex.spec.submodel_defs[0].name
    return ex.spec


def extract_file(path) -> ExtractedSpec:
    return extract_spec(load_grid(path), str(path))


__all__ = ["extract_file", "extract_spec"]
