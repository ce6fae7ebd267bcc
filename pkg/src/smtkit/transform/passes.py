"""Rewriting passes over an ExtractedSpec.

Each pass returns a new spec and leaves its input untouched.
"""

from __future__ import annotations

import copy
import re
from collections import Counter
from dataclasses import replace
from typing import Optional

from ..errors import Severity, SmtkitError
from ..extracted import ExtractedSpec, ImportRef, RawFieldRow, RawTypeDef, Rename
from ..grid.cells import find_identifiers, parse_id_short_cell, split_kind_prefix
from ..grid.valuetypes import normalize_type
from ..model.types import (IDENTIFIER_RE, CanonicalValueType, ElementKind, EnumLiteral, EnumType,
                           ValueKind, sanitize_identifier)
from .registry import SemanticRegistry

_OR_RE = re.compile(r"\s+or\s+")


# ---------------------------------------------------------------- "or" splitting

def split_or_idshorts(spec: ExtractedSpec) -> ExtractedSpec:
    """Turn a row named ``A or B or C`` into one row per name."""
    out = spec.copy()
    for d in out.defs:
        rows: list[RawFieldRow] = []
        for row in d.rows:
            _, rest = split_kind_prefix(row.id_short_cell)
            first = rest.strip().split("\n", 1)[0]
            names = [n for n in _OR_RE.split(first) if n.strip()] if _OR_RE.search(first) else []
            if len(names) < 2:
                rows.append(row)
                continue
            ids = row.identifiers
            for i, name in enumerate(names):
                clone = copy.deepcopy(row)
                try:
                    clone.id_short, _ = parse_id_short_cell(name)
                except SmtkitError:
                    continue
                if len(ids) == len(names):
                    clone.semantic_id = ids[i]
                    clone.identifiers = [ids[i]]
                rows.append(clone)
        d.rows = rows
    return out


# ---------------------------------------------------------------- fragments

def merge_fragments(spec: ExtractedSpec) -> ExtractedSpec:
    """Weave fragment rows into every named target; fragment defs disappear."""
    out = spec.copy()
    fragments = [d for d in out.defs if d.is_fragment]
    if not fragments:
        return out
    for frag in fragments:
        for target_name in frag.fragment_targets:
            targets = [d for d in out.defs if d.name == target_name and not d.is_fragment]
            if not targets:
                out.add_finding("UNKNOWN_FRAGMENT_TARGET", Severity.WARNING, frag.location,
                                f"fragment {frag.name!r} names unknown target {target_name!r}")
                continue
            for target in targets:
                native = {r.name for r in target.rows if r.from_fragment is None}
                for row in frag.rows:
                    if row.name in native:
                        out.add_finding("FRAGMENT_COLLISION", Severity.WARNING, row.location,
                                        f"{target.name} already defines {row.name!r}; "
                                        "the native row is kept")
                        continue
                    clone = copy.deepcopy(row)
                    clone.from_fragment = frag.name
                    target.rows.append(clone)
    frag_keys = {f.key for f in fragments}
    first_target = {}
    for frag in fragments:
        named = [d for t in frag.fragment_targets for d in out.defs
                 if d.name == t and not d.is_fragment]
        if named:
            first_target[frag.key] = named[0].key
    for d in out.defs:
        if d.parent_key in frag_keys:
            d.parent_key = first_target.get(d.parent_key)
    out.defs = [d for d in out.defs if d.key not in frag_keys]
    return out


# ---------------------------------------------------------------- notes

_USER_ID_RE = re.compile(
    r"id\s*short\b.*\b(can|may|could|shall)\s+(be\s+)?(chosen|changed|selected|freely|defined)"
    r"|arbitrar|name\s+(can|may)\s+be\s+chosen", re.IGNORECASE)
_ALT_SEM_RE = re.compile(
    r"other\s+semantic\s*ids?\s+(are|is)\s+(also\s+)?allowed|alternative\s+semantic\s*ids?"
    r"|admissible|may\s+also\s+be\s+used|can\s+also\s+be\s+used", re.IGNORECASE)
_ENUM_INTRO_RE = re.compile(r"\b(one\s+of|allowed\s+values|either|valid\s+values|possible\s+values)"
                            r"\b\s*:?\s*(.+)$", re.IGNORECASE)
_OPEN_RE = re.compile(r"other\s+values\s+(are|is)\s+(also\s+)?(allowed|permitted|possible)"
                      r"|extensible|not\s+exhaustive|open\s+list", re.IGNORECASE)
_KV_LINE_RE = re.compile(r"^\s*([A-Za-z0-9][\w\-.]*)\s*:\s+(\S.*)$")
_KV_SKIP = {"note", "notes", "constraint", "recommendation", "example", "examples", "eg", "unit",
            "definition", "description", "name", "semanticid", "http", "https", "urn", "see",
            "preferredname", "shortname", "source"}


def classify_note(note: str) -> Optional[str]:
    """Which interpretation a note triggers, or None when it matches no pattern."""
    if _USER_ID_RE.search(note):
        return "allowsUserIdShort"
    if _ALT_SEM_RE.search(note):
        return "alternativeSemanticIds"
    if _enum_values([note]) is not None:
        return "enumeration"
    if re.match(r"\s*applies\s+to\b", note, re.IGNORECASE):
        return "fragment"
    return None


def interpret_notes(spec: ExtractedSpec) -> ExtractedSpec:
    """Derive idShort-freedom and alternative-semanticId flags from notes."""
    out = spec.copy()
    for d in out.defs:
        if d.id_short.user_chosen:
            d.allows_user_id_short = True
        for note in d.notes:
            if _USER_ID_RE.search(note) and not d.allows_user_id_short:
                d.allows_user_id_short = True
                d.advisory.append("allowsUserIdShort")
        for row in d.rows:
            if row.id_short.user_chosen:
                row.allows_user_id_short = True
            for note in row.notes:
                if _USER_ID_RE.search(note) and not row.allows_user_id_short:
                    row.allows_user_id_short = True
                    row.advisory.append("allowsUserIdShort")
                if _ALT_SEM_RE.search(note):
                    for sid in find_identifiers(note):
                        if sid != row.semantic_id and sid not in row.alternative_semantic_ids:
                            row.alternative_semantic_ids.append(sid)
                    if row.alternative_semantic_ids and "alternativeSemanticIds" not in row.advisory:
                        row.advisory.append("alternativeSemanticIds")
    return out


# ---------------------------------------------------------------- enumerations

def _split_values(text: str) -> list[str]:
    quoted = re.findall(r"[\"'“‘]([^\"'”’]+)[\"'”’]", text)
    if len(quoted) >= 2:
        return [q.strip() for q in quoted]
    text = re.split(r"[;.](\s|$)", text, maxsplit=1)[0]
    parts = re.split(r"\s*,\s*|\s+or\s+|\s+and\s+", text)
    return [p.strip().strip("\"'") for p in parts if p.strip()]


def _enum_values(texts: list[str]) -> Optional[list[tuple[str, str]]]:
    """(value, meaning) pairs of an enumeration stated in ``texts``."""
    kv: list[tuple[str, str]] = []
    for text in texts:
        for line in text.split("\n"):
            m = _KV_LINE_RE.match(line)
            if m and m.group(1).lower().replace(".", "") not in _KV_SKIP \
                    and not m.group(2).startswith("//"):
                kv.append((m.group(1), m.group(2).strip()))
    if len(kv) >= 2:
        return kv
    for text in texts:
        flat = " ".join(text.split())
        m = _ENUM_INTRO_RE.search(flat)
        if m:
            values = _split_values(m.group(2))
            if len(values) >= 2 and all(len(v) <= 40 and len(v.split()) <= 3 for v in values):
                return [(v, "") for v in values]
    return None


def literal_name(value: str) -> str:
    name = re.sub(r"[^A-Za-z0-9_]", "_", value.upper())
    if not name or not name[0].isalpha():
        name = "V_" + name
    return name


def extract_enums(spec: ExtractedSpec) -> ExtractedSpec:
    """Turn enumerations written in notes or descriptions into EnumTypes."""
    out = spec.copy()
    names = {e.name for e in out.enums}
    for d in out.defs:
        for row in d.rows:
            if row.kind is not ElementKind.Property or row.type_ref is not None:
                continue
            texts = [row.semantic_cell, *row.notes]
            pairs = _enum_values(texts)
            if pairs is None:
                continue
            literals: list[EnumLiteral] = []
            seen_values, seen_names = set(), Counter()
            for value, meaning in pairs:
                if value in seen_values:
                    continue
                seen_values.add(value)
                lname = literal_name(value)
                seen_names[lname] += 1
                if seen_names[lname] > 1:
                    lname = f"{lname}_{seen_names[lname]}"
                ids = find_identifiers(meaning)
                literals.append(EnumLiteral(lname, value, ids[0] if ids else None))
            is_open = any(_OPEN_RE.search(t) for t in texts + [row.description])
            name = f"{sanitize_identifier(row.name)}Values"
            base, n = name, 1
            while name in names:
                n += 1
                name = f"{base}_{n}"
            names.add(name)
            vt = row.value_type or CanonicalValueType(ValueKind.String, row.value_type_raw or "")
            out.enums.append(EnumType(name, tuple(literals), is_open, vt))
            row.type_ref = name
    return out


# ---------------------------------------------------------------- value types

def normalize_value_types(spec: ExtractedSpec) -> ExtractedSpec:
    out = spec.copy()
    for d in out.defs:
        for row in d.rows:
            if row.value_type is not None or row.kind.is_container:
                continue
            if row.kind is ElementKind.MultiLanguageProperty:
                row.value_type = normalize_type(row.value_type_raw or "", row.kind)
            elif row.value_type_raw:
                found = []
                row.value_type = normalize_type(row.value_type_raw, row.kind, found)
                for f in found:
                    out.add_finding(f.code, f.severity, row.location, f.message)
    return out


def default_value_types(spec: ExtractedSpec) -> ExtractedSpec:
    """Every Property ends with a value type; String is the last resort."""
    out = spec.copy()
    for d in out.defs:
        for row in d.rows:
            if row.kind is ElementKind.Property and row.value_type is None:
                row.value_type = CanonicalValueType(ValueKind.String, "")
                out.add_finding("VALUE_TYPE_DEFAULTED", Severity.INFO, row.location,
                                f"{row.name} has no value type; String assumed")
    return out


# ---------------------------------------------------------------- semanticId resolution

def _reachable(spec: ExtractedSpec) -> set[str]:
    keys = {d.key: d for d in spec.defs}
    seen: set[str] = set()
    stack = [d.key for d in spec.defs if d.kind is ElementKind.Submodel]
    while stack:
        k = stack.pop()
        if k in seen or k not in keys:
            continue
        seen.add(k)
        stack.extend(r.type_key for r in keys[k].rows if r.type_key)
    return seen


def resolve_semantic_ids(spec: ExtractedSpec, registry: SemanticRegistry) -> ExtractedSpec:
    """Link fields to types of other specifications and fill missing value types."""
    out = spec.copy()
    if not len(registry):
        return out
    before = _reachable(out)
    imports: dict[str, ImportRef] = {i.spec_number: i for i in out.imports}
    for d in out.defs:
        for row in d.rows:
            if row.semantic_id is None:
                continue
            if row.kind.is_container:
                entry = registry.lookup(row.semantic_id, exclude_spec=out.spec_number or None)
                name = None
                if entry is not None and entry.role == "type":
                    name = entry.name
                elif entry is not None and entry.type_ref:
                    dep = registry.model(entry.spec_number, entry.version)
                    if dep is not None and dep.record(entry.type_ref) is not None:
                        name = entry.type_ref
                if name is None:
                    continue
                imp = imports.setdefault(entry.spec_number,
                                         ImportRef(entry.spec_number, entry.version, []))
                if imp.version != entry.version:
                    out.add_finding("IMPORT_VERSION_CONFLICT", Severity.WARNING, row.location,
                                    f"{entry.spec_number} already imported as {imp.version}")
                    continue
                if name not in imp.names:
                    imp.names.append(name)
                row.type_ref = name
                row.type_key = None
                out.add_finding("TYPE_IMPORTED", Severity.INFO, row.location,
                                f"{row.name} uses {name} from {entry.spec_number} "
                                f"{entry.version[0]}.{entry.version[1]}")
            elif row.value_type is None and row.kind in (ElementKind.Property, ElementKind.Range):
                entry = registry.lookup(row.semantic_id, role="field")
                if entry is not None and entry.value_type is not None:
                    row.value_type = entry.value_type
                    out.add_finding("TYPE_FROM_SEMANTICID", Severity.INFO, row.location,
                                    f"value type {entry.value_type.kind.value} taken from "
                                    f"{entry.spec_number} {entry.name}")
    out.imports = sorted(imports.values(), key=lambda i: i.spec_number)
    after = _reachable(out)
    dropped = before - after
    if dropped:
        for d in out.defs:
            if d.key in dropped:
                out.add_finding("TYPE_DROPPED", Severity.INFO, d.location,
                                f"local definition of {d.name} replaced by an import")
        out.defs = [d for d in out.defs if d.key not in dropped]
    return out


def synthesize_missing_types(spec: ExtractedSpec) -> ExtractedSpec:
    """Give container rows that reference nothing an empty local type."""
    out = spec.copy()
    made: dict[str, RawTypeDef] = {}
    for d in list(out.defs):
        for row in d.rows:
            if not row.kind.is_container or row.type_key or row.type_ref:
                continue
            if row.kind is ElementKind.Submodel:
                row.kind = ElementKind.SubmodelElementCollection
            target = made.get(row.name)
            if target is None:
                target = RawTypeDef(key=f"{row.name}#synthesized", name=row.name,
                                    id_short=row.id_short, kind=row.kind,
                                    semantic_id=row.semantic_id, description=row.description,
                                    parent=d.name, parent_key=d.key, location=row.location)
                made[row.name] = target
                out.defs.append(target)
                out.add_finding("TYPE_SYNTHESIZED", Severity.WARNING, row.location,
                                f"no structure known for {row.name}; an empty type was created")
            row.type_key = target.key
    return out


# ---------------------------------------------------------------- names

def uniquify_names(spec: ExtractedSpec) -> ExtractedSpec:
    """Make type names and field bases unique and legal; record every rename."""
    out = spec.copy()
    renames = out.renames
    reserved = {n for imp in out.imports for n in imp.names}
    types_taken: set[str] = set()

    def fresh(name: str, taken: set[str]) -> str:
        candidate, n = name, 1
        while candidate in taken or candidate in reserved:
            n += 1
            candidate = f"{name}_{n}"
        taken.add(candidate)
        return candidate

    # nesting order: submodels first, then each definition after its parent
    for d in _nesting_order(out):
        legal = d.name if IDENTIFIER_RE.match(d.name) else sanitize_identifier(d.name)
        new = fresh(legal, types_taken)
        if new != d.name:
            renames.append(Rename("type", d.name, new))
            if legal != d.name and d.id_short.display_name is None:
                d.id_short = replace(d.id_short, display_name=d.name)
            d.name = new
    enum_map: dict[str, str] = {}
    for i, e in enumerate(out.enums):
        new = fresh(e.name, types_taken)
        if new != e.name:
            renames.append(Rename("enum", e.name, new))
            enum_map[e.name] = new
            out.enums[i] = replace(e, name=new)

    for d in out.defs:
        field_taken: set[str] = set()
        for row in d.rows:
            base = row.name
            legal = base if IDENTIFIER_RE.match(base) else sanitize_identifier(base)
            new = legal
            n = 1
            while new in field_taken:
                n += 1
                new = f"{legal}_{n}"
            field_taken.add(new)
            if new != base:
                display = row.id_short.display_name or (base if legal != base else None)
                row.id_short = replace(row.id_short, base=new, display_name=display)
                renames.append(Rename(d.name, base, new))
            if row.type_ref in enum_map:
                row.type_ref = enum_map[row.type_ref]
    return out


def _nesting_order(spec: ExtractedSpec) -> list[RawTypeDef]:
    children: dict[Optional[str], list[RawTypeDef]] = {}
    keys = {d.key for d in spec.defs}
    for d in spec.defs:
        parent = d.parent_key if d.parent_key in keys else None
        children.setdefault(parent, []).append(d)
    ordered: list[RawTypeDef] = []
    seen: set[str] = set()

    def visit(d: RawTypeDef) -> None:
        if d.key in seen:
            return
        seen.add(d.key)
        ordered.append(d)
        for c in children.get(d.key, []):
            visit(c)

    roots = children.get(None, [])
    for d in sorted(roots, key=lambda r: r.kind is not ElementKind.Submodel):
        visit(d)
    for d in spec.defs:
        visit(d)
    return ordered


__all__ = ["classify_note", "default_value_types", "extract_enums", "interpret_notes",
           "literal_name", "merge_fragments", "normalize_value_types", "resolve_semantic_ids",
           "split_or_idshorts", "synthesize_missing_types", "uniquify_names"]
