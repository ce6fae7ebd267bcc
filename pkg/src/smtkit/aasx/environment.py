"""AAS environment XML (v2 or v3) to ExtractedSpec."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from collections import Counter
from pathlib import Path
from typing import Iterator, Optional

from ..errors import Finding, Location, Severity, SmtkitError
from ..extracted import ExtractedSpec, RawFieldRow, RawTypeDef
from ..grid.cells import parse_cardinality, parse_id_short_cell
from ..model.types import Cardinality, ElementKind, ExampleValue, IdShortSpec, Placeholder, SemanticId
from .dialect import AasDialect, detect_dialect
from .package import AasxPackage, XmlPart, local_name, open_package

ELEMENT_KINDS = {
    "property": ElementKind.Property,
    "multiLanguageProperty": ElementKind.MultiLanguageProperty,
    "file": ElementKind.File,
    "blob": ElementKind.Blob,
    "range": ElementKind.Range,
    "referenceElement": ElementKind.ReferenceElement,
    "relationshipElement": ElementKind.RelationshipElement,
    "annotatedRelationshipElement": ElementKind.AnnotatedRelationshipElement,
    "submodelElementCollection": ElementKind.SubmodelElementCollection,
    # lists are realized as collections
    "submodelElementList": ElementKind.SubmodelElementCollection,
    "entity": ElementKind.Entity,
}
UNSUPPORTED = {"operation", "capability", "basicEvent", "basicEventElement", "eventElement"}
_SUFFIX_RE = re.compile(r"^(.*?[A-Za-z_])(\d+)$")


def children(elem: ET.Element, name: str) -> list[ET.Element]:
    return [c for c in elem if local_name(c.tag) == name]


def child(elem: ET.Element, name: str) -> Optional[ET.Element]:
    for c in elem:
        if local_name(c.tag) == name:
            return c
    return None


def child_text(elem: ET.Element, name: str) -> str:
    c = child(elem, name)
    return (c.text or "").strip() if c is not None else ""


def lang_strings(elem: Optional[ET.Element]) -> list[tuple[str, str]]:
    """(language, text) pairs from a v2 ``langString lang=`` or v3 language/text list."""
    if elem is None:
        return []
    out = []
    for c in elem:
        lang = c.get("lang")
        if lang is not None:
            out.append((lang.strip().lower(), (c.text or "").strip()))
        elif child(c, "text") is not None:
            out.append((child_text(c, "language").lower(), child_text(c, "text")))
    return out


def preferred_text(pairs: list[tuple[str, str]]) -> str:
    for lang, text in pairs:
        if lang.split("-")[0] == "en" and text:
            return text
    return next((text for _, text in pairs if text), "")


def reference_value(elem: Optional[ET.Element]) -> tuple[Optional[str], Optional[str]]:
    """Flatten a reference to its last key value, plus the key type."""
    if elem is None:
        return None, None
    keys_parent = child(elem, "keys")
    if keys_parent is None:
        # v2 wraps keys directly; some exports add an extra level
        for c in elem.iter():
            if local_name(c.tag) == "keys":
                keys_parent = c
                break
    if keys_parent is None:
        return None, None
    keys = children(keys_parent, "key")
    if not keys:
        return None, None
    last = keys[-1]
    value = child_text(last, "value") or (last.text or "").strip()
    key_type = last.get("type") or child_text(last, "type") or None
    return (value or None), key_type


def qualifiers(elem: ET.Element) -> Iterator[tuple[str, str]]:
    """(type, value) of every qualifier directly attached to ``elem``."""
    for holder_name in ("qualifier", "qualifiers"):
        for holder in children(elem, holder_name):
            nodes = [holder] if child(holder, "type") is not None else list(holder)
            for q in nodes:
                kind = child(q, "type")
                if kind is None or child(q, "value") is None and child(q, "valueId") is None:
                    continue
                yield (kind.text or "").strip(), child_text(q, "value")


def value_type_text(elem: ET.Element) -> Optional[str]:
    vt = child(elem, "valueType")
    if vt is None:
        return None
    text = (vt.text or "").strip()
    if not text:
        # v2 exports sometimes nest the name, e.g. dataObjectType/name
        text = " ".join(t.strip() for t in vt.itertext() if t.strip())
    return text or None


def read_cardinality_qualifier(element: ET.Element, dialect: Optional[AasDialect] = None
                               ) -> Optional[Cardinality]:
    """Cardinality from a qualifier typed like ``Cardinality`` or ``Multiplicity``."""
    for kind, value in qualifiers(element):
        low = kind.lower()
        if "cardinality" in low or "multiplicity" in low:
            return parse_cardinality(value)
    return None


class _EnvParser:
    def __init__(self, root: ET.Element, dialect: AasDialect, source: str):
        self.root = root
        self.dialect = dialect
        self.spec = ExtractedSpec(source=source, provenance="aasx", dialect=dialect.version.value)
        self.names = Counter()
        self.concepts = self._concept_descriptions()
        self.instance = False

    def finding(self, code: str, severity: Severity, path: str, message: str) -> None:
        self.spec.findings.append(Finding(code, severity, Location(self.spec.source, path), message))

    def _concept_descriptions(self) -> dict[str, tuple[str, str]]:
        out = {}
        for holder in children(self.root, "conceptDescriptions"):
            for cd in children(holder, "conceptDescription"):
                ident = child_text(cd, self.dialect.identifier_tag) or child_text(cd, "id") \
                    or child_text(cd, "identification")
                preferred = definition = ""
                for node in cd.iter():
                    name = local_name(node.tag)
                    if name == "preferredName" and not preferred:
                        preferred = preferred_text(lang_strings(node))
                    elif name == "definition" and not definition:
                        definition = preferred_text(lang_strings(node))
                if ident:
                    out[ident] = (preferred, definition)
        return out

    def _description(self, elem: ET.Element, semantic: Optional[str]) -> str:
        text = preferred_text(lang_strings(child(elem, "description")))
        if text or not semantic:
            return text
        preferred, definition = self.concepts.get(semantic, ("", ""))
        return definition or preferred

    def _semantic(self, elem: ET.Element, path: str, report: bool = True) -> Optional[SemanticId]:
        value, key_type = reference_value(child(elem, "semanticId"))
        if value is None:
            return None
        if report and key_type == "ConceptDescription" and value not in self.concepts:
            self.finding("UNRESOLVED_REFERENCE", Severity.INFO, path,
                         f"semanticId {value!r} names no concept description in the package")
        return SemanticId.parse(value)

    def parse(self) -> ExtractedSpec:
        for holder in children(self.root, "submodels"):
            for sm in children(holder, "submodel"):
                self._submodel(sm)
        if not self.spec.defs:
            self.finding("NO_SUBMODEL", Severity.WARNING, "", "environment contains no submodel")
        return self.spec

    def _new_def(self, elem: ET.Element, kind: ElementKind, path: str,
                 parent: Optional[RawTypeDef]) -> RawTypeDef:
        id_short = child_text(elem, "idShort") or "Unnamed"
        spec = _id_short_spec(id_short)
        self.names[spec.base] += 1
        # the row for a nested container already reported the reference
        semantic = self._semantic(elem, path, report=parent is None)
        d = RawTypeDef(key=f"{spec.base}#{self.names[spec.base]}", name=spec.base, id_short=spec,
                       kind=kind, semantic_id=semantic,
                       description=self._description(elem, semantic and semantic.value),
                       parent=parent.name if parent else None,
                       parent_key=parent.key if parent else None,
                       location=path)
        self.spec.defs.append(d)
        return d

    def _submodel(self, sm: ET.Element) -> None:
        path = child_text(sm, "idShort") or "submodel"
        d = self._new_def(sm, ElementKind.Submodel, path, None)
        self.instance = child_text(sm, "kind").lower() == "instance"
        admin = child(sm, "administration")
        if admin is not None and not self.spec.version:
            version, revision = child_text(admin, "version"), child_text(admin, "revision")
            if version:
                self.spec.version = f"{version}.{revision}" if revision else version
        if not self.spec.title:
            self.spec.title = d.name
        holder = child(sm, "submodelElements")
        if holder is not None:
            self._elements(holder, d, path)

    def _element_nodes(self, holder: ET.Element) -> Iterator[ET.Element]:
        for c in holder:
            if local_name(c.tag) == "submodelElement":
                # v2 wrapper around exactly one element
                for inner in c:
                    yield inner
            else:
                yield c

    def _elements(self, holder: ET.Element, owner: RawTypeDef, path: str) -> None:
        rows: list[tuple[RawFieldRow, Optional[RawTypeDef]]] = []
        for elem in self._element_nodes(holder):
            name = local_name(elem.tag)
            id_short = child_text(elem, "idShort")
            where = f"{path}/{id_short or name}"
            if name in UNSUPPORTED:
                self.finding("UNSUPPORTED_ELEMENT", Severity.INFO, where,
                             f"{name} elements are outside the supported element kinds")
                continue
            kind = ELEMENT_KINDS.get(name)
            if kind is None:
                self.finding("UNSUPPORTED_ELEMENT", Severity.INFO, where, f"unknown element {name!r}")
                continue
            rows.append(self._row(elem, kind, owner, where))
        for row, _ in _merge_instances(rows, self):
            owner.rows.append(row)

    def _row(self, elem: ET.Element, kind: ElementKind, owner: RawTypeDef,
             where: str) -> tuple[RawFieldRow, Optional[RawTypeDef]]:
        id_short = child_text(elem, "idShort")
        semantic = self._semantic(elem, where)
        row = RawFieldRow(id_short_cell=id_short, location=where, id_short=_id_short_spec(id_short),
                          kind=kind, kind_raw=local_name(elem.tag), semantic_id=semantic,
                          identifiers=[semantic] if semantic else [],
                          description=self._description(elem, semantic and semantic.value))
        row.semantic_cell = semantic.value if semantic else ""
        try:
            row.cardinality = read_cardinality_qualifier(elem, self.dialect)
        except SmtkitError as exc:
            self.finding(exc.code, Severity.WARNING, where, exc.message)
        if row.cardinality is not None:
            row.cardinality_cell = row.cardinality.render()

        if kind is ElementKind.Property:
            row.value_type_raw = value_type_text(elem)
            value = child_text(elem, "value")
            if value:
                row.examples.append(ExampleValue(value))
        elif kind is ElementKind.MultiLanguageProperty:
            row.value_type_raw = "langString"
            for lang, text in lang_strings(child(elem, "value")):
                if text:
                    row.examples.append(ExampleValue(text, lang or None))
        elif kind is ElementKind.Range:
            row.value_type_raw = value_type_text(elem)
        for qtype, qvalue in qualifiers(elem):
            if "example" in qtype.lower() and qvalue:
                row.examples.append(ExampleValue(qvalue))
        row.value_cell = "\n".join([row.value_type_raw or ""] + [e.text for e in row.examples]).strip()
        if self.instance and row.examples:
            row.instantiated = True

        nested: Optional[RawTypeDef] = None
        if kind.is_container:
            nested = self._new_def(elem, kind, where, owner)
            row.type_key = nested.key
            holder = child(elem, "statements" if kind is ElementKind.Entity else "value")
            if holder is not None:
                self._elements(holder, nested, where)
        return row, nested


def _id_short_spec(id_short: str) -> IdShortSpec:
    try:
        spec, _ = parse_id_short_cell(id_short)
        return spec
    except SmtkitError:
        return IdShortSpec("Unnamed")


def _signature(row: RawFieldRow, nested: Optional[RawTypeDef]) -> tuple:
    sem = row.semantic_id.value if row.semantic_id else None
    inner = tuple(sorted(r.name for r in nested.rows)) if nested else ()
    return (row.kind, (row.value_type_raw or "").lower().removeprefix("xs:"), sem, inner)


def _merge_instances(rows: list[tuple[RawFieldRow, Optional[RawTypeDef]]], parser: _EnvParser):
    """Collapse ``Phone01``, ``Phone02``... siblings into one Counting field."""
    groups: dict[str, list[int]] = {}
    for i, (row, _) in enumerate(rows):
        if row.id_short.placeholder is not Placeholder.NONE:
            continue
        m = _SUFFIX_RE.match(row.name)
        if m:
            groups.setdefault(m.group(1), []).append(i)
    drop: set[int] = set()
    for base, idx in groups.items():
        if len(idx) < 2:
            continue
        members = [rows[i] for i in idx]
        digits = {len(_SUFFIX_RE.match(r.name).group(2)) for r, _ in members}
        sigs = {_signature(r, n) for r, n in members}
        for r, _ in members:
            r.instantiated = True
        if len(sigs) != 1 or len(digits) != 1 or any(r.name == base for r, _ in rows):
            continue
        first, nested = members[0]
        first.id_short = IdShortSpec(base, Placeholder.COUNTING, digits=digits.pop())
        count = len(members)
        if first.cardinality is None:
            first.cardinality = Cardinality(0, None)
        elif first.cardinality.max is not None and first.cardinality.max < count:
            first.cardinality = Cardinality(first.cardinality.min, None)
        for i, (r, n) in zip(idx[1:], members[1:]):
            first.examples.extend(e for e in r.examples if e not in first.examples)
            drop.add(i)
            if n is not None:
                _remove_def(parser.spec, n)
        if nested is not None:
            nested.name = base
            nested.id_short = first.id_short
        parser.finding("INSTANTIATED_MERGED", Severity.INFO, first.location,
                       f"{count} instances merged into {first.id_short.render()}")
    return [pair for i, pair in enumerate(rows) if i not in drop]


def _remove_def(spec: ExtractedSpec, d: RawTypeDef) -> None:
    doomed = {d.key}
    changed = True
    while changed:
        changed = False
        for other in spec.defs:
            if other.parent_key in doomed and other.key not in doomed:
                doomed.add(other.key)
                changed = True
    spec.defs = [x for x in spec.defs if x.key not in doomed]


_SPEC_NUMBER_RE = re.compile(r"(?<!\d)(\d{5})(?!\d)")


def parse_environment(part: XmlPart, dialect: Optional[AasDialect] = None,
                      source: str = "") -> ExtractedSpec:
    dialect = dialect or detect_dialect(part)
    spec = _EnvParser(part.root(), dialect, source or part.path).parse()
    return spec


def _select_part(pkg: AasxPackage) -> tuple[XmlPart, AasDialect, list[Finding]]:
    notes: list[Finding] = []
    chosen = None
    for part in pkg.xml_parts:
        try:
            dialect = detect_dialect(part)
        except SmtkitError as exc:
            notes.append(Finding("PART_SKIPPED", Severity.INFO, Location(pkg.path, part.path),
                                 exc.message))
            continue
        if chosen is None:
            chosen = (part, dialect)
        else:
            notes.append(Finding("PART_SKIPPED", Severity.INFO, Location(pkg.path, part.path),
                                 "additional AAS environment part ignored"))
    if chosen is None:
        first = pkg.xml_parts[0]
        raise SmtkitError("UNKNOWN_DIALECT", f"unrecognized namespace {first.namespace!r}",
                          first.path, detail=first.namespace)
    return chosen[0], chosen[1], notes


def extract_package(path) -> ExtractedSpec:
    """Open an AASX file and extract its (first) AAS environment."""
    pkg = open_package(path)
    part, dialect, notes = _select_part(pkg)
    spec = parse_environment(part, dialect, str(path))
    spec.findings[:0] = notes
    for missing in pkg.missing_parts:
        spec.findings.insert(0, Finding("MISSING_PART", Severity.INFO, Location(str(path), missing),
                                        "relationship target is absent from the package"))
    m = _SPEC_NUMBER_RE.search(Path(str(path)).name)
    if m:
        spec.spec_number = m.group(1)
    return spec


__all__ = ["ELEMENT_KINDS", "extract_package", "parse_environment", "read_cardinality_qualifier"]
