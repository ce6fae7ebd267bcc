"""Line-oriented ``.smtm`` text format for models.

A model file looks like::

    model "02006"
    version 2.0
    title "Digital nameplate for industrial equipment"
    import "02002" 1.0 ContactInformation
    enum MarkingValues valueType=String open=false
      literal CE value="CE"
    end
    record Marking kind=SubmodelElementCollection semanticId="IRI https://example.org/Marking"
      field MarkingName kind=Property valueType=String card=1..1
        example "CE"
    end
    submodel Nameplate kind=Submodel
      field Marking kind=SubmodelElementCollection type=Marking card=0..*
    end

Values are bare tokens or JSON string literals. ``note``, ``alternative`` and
``example`` lines attach to the preceding ``field`` line, or to the enclosing
record when no field has been declared yet.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Optional

from ..errors import SmtkitError
from .types import (AasField, CanonicalValueType, Cardinality, ElementKind, EnumLiteral, EnumType,
                    ExampleValue, IdShortSpec, Import, Model, Placeholder, RecordType, Scheme,
                    SemanticId, ValueKind)
from .validate import validate_model

_BARE_RE = re.compile(r"[A-Za-z0-9_.\-*,/:+@]+\Z")
_TOKEN_RE = re.compile(r'\s*(?:([A-Za-z_][A-Za-z0-9_]*)=)?("(?:[^"\\]|\\.)*"|[^\s"]+)')
_CARD_RE = re.compile(r"(\d+)\.\.(\d+|\*)\Z")
_VERSION_RE = re.compile(r"(\d+)\.(\d+)\Z")

_KEYWORDS = {"model", "version", "title", "import", "enum", "literal", "record", "submodel",
             "field", "note", "alternative", "example", "end"}


def _q(text: str) -> str:
    if text and _BARE_RE.match(text) and text not in ("true", "false"):
        return text
    return json.dumps(text, ensure_ascii=False)


def _qs(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _sid(sid: SemanticId) -> str:
    parts = [sid.scheme.value, sid.value]
    if sid.version is not None:
        parts.append(sid.version)
    return _qs(" ".join(parts))


def _bool(b: bool) -> str:
    return "true" if b else "false"


def serialize_model(model: Model) -> str:
    """Render ``model`` deterministically; raises ``INVALID_MODEL`` if invalid."""
    report = validate_model(model)
    if not report.ok:
        raise SmtkitError("INVALID_MODEL", "; ".join(str(v) for v in report), detail=report)

    lines = [f"model {_qs(model.spec_number)}", f"version {model.version_text}"]
    if model.title:
        lines.append(f"title {_qs(model.title)}")
    for imp in model.imports:
        lines.append(" ".join([f"import {_qs(imp.spec_number)} {imp.version[0]}.{imp.version[1]}",
                               *(_q(n) for n in imp.names)]))
    for e in model.enums:
        lines.append(f"enum {_q(e.name)} {_value_type_attrs(e.value_type)} open={_bool(e.open)}")
        for lit in e.literals:
            line = f"  literal {_q(lit.name)} value={_qs(lit.value)}"
            if lit.semantic_id is not None:
                line += f" semanticId={_sid(lit.semantic_id)}"
            lines.append(line)
        lines.append("end")
    for r in model.types:
        lines.extend(_record_lines("record", r))
    for r in model.submodels:
        lines.extend(_record_lines("submodel", r))
    return "\n".join(lines) + "\n"


def _value_type_attrs(vt: CanonicalValueType) -> str:
    out = f"valueType={vt.kind.value}"
    if vt.raw:
        out += f" raw={_qs(vt.raw)}"
    return out


def _record_lines(keyword: str, r: RecordType) -> list[str]:
    head = f"{keyword} {_q(r.name)} kind={r.kind.value}"
    if r.semantic_id is not None:
        head += f" semanticId={_sid(r.semantic_id)}"
    if r.description:
        head += f" description={_qs(r.description)}"
    if r.allows_user_id_short:
        head += " allowsUserIdShort=true"
    if r.advisory:
        head += f" advisory={_q(','.join(r.advisory))}"
    lines = [head]
    lines.extend(f"  note {_qs(n)}" for n in r.notes)
    for f in r.fields:
        lines.extend(_field_lines(f))
    lines.append("end")
    return lines


def _field_lines(f: AasField) -> list[str]:
    ids = f.id_short
    parts = [f"  field {_q(ids.base)}"]
    if ids.placeholder is not Placeholder.NONE:
        parts.append(f"placeholder={ids.placeholder.value}")
    if ids.placeholder_text is not None:
        parts.append(f"placeholderText={_qs(ids.placeholder_text)}")
    if ids.digits:
        parts.append(f"digits={ids.digits}")
    if ids.display_name is not None:
        parts.append(f"displayName={_qs(ids.display_name)}")
    parts.append(f"kind={f.kind.value}")
    if f.value_type is not None:
        parts.append(_value_type_attrs(f.value_type))
    if f.type_ref is not None:
        parts.append(f"type={_q(f.type_ref)}")
    parts.append(f"card={f.cardinality.render()}")
    if f.semantic_id is not None:
        parts.append(f"semanticId={_sid(f.semantic_id)}")
    if f.description:
        parts.append(f"description={_qs(f.description)}")
    if f.allows_user_id_short:
        parts.append("allowsUserIdShort=true")
    if f.ordered:
        parts.append("ordered=true")
    if f.advisory:
        parts.append(f"advisory={_q(','.join(f.advisory))}")
    lines = [" ".join(parts)]
    lines.extend(f"    alternative {_sid(s)}" for s in f.alternative_semantic_ids)
    lines.extend(f"    note {_qs(n)}" for n in f.notes)
    for ex in f.examples:
        line = f"    example {_qs(ex.text)}"
        if ex.language is not None:
            line += f" lang={_q(ex.language)}"
        if ex.unit is not None:
            line += f" unit={_qs(ex.unit)}"
        lines.append(line)
    return lines


class _Line:
    """Tokenized line: positional arguments plus key=value attributes."""

    def __init__(self, text: str, lineno: int):
        self.lineno = lineno
        self.args: list[tuple[str, int]] = []
        self.attrs: dict[str, tuple[str, int]] = {}
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN_RE.match(stripped, pos)
            if not m or m.end() == pos:
                raise self.error(f"unexpected character {stripped[pos]!r}", pos)
            col = m.start(2)
            raw = m.group(2)
            if raw.startswith('"'):
                try:
                    value = json.loads(raw)
                except json.JSONDecodeError as exc:
                    raise self.error(f"bad string literal: {exc.msg}", col) from None
            else:
                value = raw
            if m.group(1):
                if m.group(1) in self.attrs:
                    raise self.error(f"duplicate attribute {m.group(1)!r}", m.start(1))
                self.attrs[m.group(1)] = (value, col)
            else:
                if self.attrs:
                    raise self.error("positional argument after attributes", col)
                self.args.append((value, col))
            pos = m.end()
        indent = len(text) - len(text.lstrip())
        self.keyword, self.keyword_col = self.args.pop(0) if self.args else ("", indent)

    def error(self, message: str, col: int) -> SmtkitError:
        return SmtkitError("SYNTAX_ERROR", message, f"line {self.lineno}, column {col + 1}")

    def arg(self, i: int, what: str) -> str:
        if i >= len(self.args):
            raise self.error(f"{self.keyword} requires {what}", self.keyword_col)
        return self.args[i][0]

    def no_extra_args(self, n: int):
        if len(self.args) > n:
            raise self.error(f"unexpected argument {self.args[n][0]!r}", self.args[n][1])

    def take(self, key: str, default=None):
        if key in self.attrs:
            return self.attrs.pop(key)[0]
        return default

    def finish(self):
        for key, (_, col) in self.attrs.items():
            raise self.error(f"unknown attribute {key!r} for {self.keyword}", col - len(key) - 1)

    def enum_attr(self, key: str, enum_cls, default=None):
        if key not in self.attrs:
            return default
        value, col = self.attrs.pop(key)
        try:
            return enum_cls(value)
        except ValueError:
            raise self.error(f"invalid {key} {value!r}", col) from None

    def bool_attr(self, key: str) -> bool:
        if key not in self.attrs:
            return False
        value, col = self.attrs.pop(key)
        if value not in ("true", "false"):
            raise self.error(f"{key} must be true or false", col)
        return value == "true"

    def int_attr(self, key: str, default: int = 0) -> int:
        if key not in self.attrs:
            return default
        value, col = self.attrs.pop(key)
        if not value.isdigit():
            raise self.error(f"{key} must be a non-negative integer", col)
        return int(value)

    def sid_attr(self, key: str) -> Optional[SemanticId]:
        if key not in self.attrs:
            return None
        value, col = self.attrs.pop(key)
        return self.parse_sid(value, col)

    def parse_sid(self, value: str, col: int) -> SemanticId:
        parts = value.split(" ")
        if len(parts) not in (2, 3):
            raise self.error(f"malformed semanticId {value!r}", col)
        try:
            scheme = Scheme(parts[0])
        except ValueError:
            raise self.error(f"unknown semanticId scheme {parts[0]!r}", col) from None
        return SemanticId(scheme, parts[1], parts[2] if len(parts) == 3 else None)

    def value_type_attr(self) -> Optional[CanonicalValueType]:
        kind = self.enum_attr("valueType", ValueKind)
        raw = self.take("raw", "")
        if kind is None:
            return None
        return CanonicalValueType(kind, raw)

    def list_attr(self, key: str) -> tuple[str, ...]:
        value = self.take(key)
        return tuple(value.split(",")) if value else ()


class _RecordBuilder:
    def __init__(self, keyword: str, line: _Line):
        self.keyword = keyword
        self.line = line
        self.name = line.arg(0, "a name")
        line.no_extra_args(1)
        self.kind = line.enum_attr("kind", ElementKind, ElementKind.SubmodelElementCollection)
        self.semantic_id = line.sid_attr("semanticId")
        self.description = line.take("description", "")
        self.allows = line.bool_attr("allowsUserIdShort")
        self.advisory = line.list_attr("advisory")
        line.finish()
        self.notes: list[str] = []
        self.fields: list[dict] = []

    def build(self) -> RecordType:
        fields = tuple(AasField(**f) for f in self.fields)
        return RecordType(self.name, self.kind, self.semantic_id, self.description, fields,
                          self.allows, tuple(self.notes), self.advisory)


def _field_from_line(line: _Line) -> dict:
    base = line.arg(0, "an idShort")
    line.no_extra_args(1)
    placeholder = line.enum_attr("placeholder", Placeholder, Placeholder.NONE)
    ids = IdShortSpec(base, placeholder, line.take("placeholderText"), line.int_attr("digits"),
                      line.take("displayName"))
    kind = line.enum_attr("kind", ElementKind, ElementKind.Property)
    value_type = line.value_type_attr()
    type_ref = line.take("type")
    card_text = line.take("card", "1..1")
    m = _CARD_RE.match(card_text)
    if not m:
        raise line.error(f"malformed cardinality {card_text!r}", 0)
    try:
        card = Cardinality(int(m.group(1)), None if m.group(2) == "*" else int(m.group(2)))
    except ValueError as exc:
        raise line.error(str(exc), 0) from None
    out = dict(id_short=ids, kind=kind, value_type=value_type, type_ref=type_ref,
               cardinality=card, semantic_id=line.sid_attr("semanticId"),
               description=line.take("description", ""),
               allows_user_id_short=line.bool_attr("allowsUserIdShort"),
               ordered=line.bool_attr("ordered"), advisory=line.list_attr("advisory"),
               alternative_semantic_ids=[], notes=[], examples=[])
    line.finish()
    return out


def _freeze_field(f: dict):
    for key in ("alternative_semantic_ids", "notes", "examples"):
        f[key] = tuple(f[key])


def parse_model(text: str) -> Model:
    """Parse ``.smtm`` text; raises ``SYNTAX_ERROR`` or ``INVALID_MODEL``."""
    spec_number = None
    version = None
    title = ""
    imports: list[Import] = []
    enums: list[EnumType] = []
    types: list[RecordType] = []
    submodels: list[RecordType] = []
    record: Optional[_RecordBuilder] = None
    enum_head: Optional[dict] = None
    enum_literals: list[EnumLiteral] = []

    for lineno, raw_line in enumerate(text.split("\n"), start=1):
        if not raw_line.strip() or raw_line.lstrip().startswith("#"):
            continue
        line = _Line(raw_line, lineno)
        kw = line.keyword
        if kw not in _KEYWORDS:
            raise line.error(f"unknown keyword {kw!r}", line.keyword_col)

        if enum_head is not None:
            if kw == "literal":
                name = line.arg(0, "a name")
                line.no_extra_args(1)
                value = line.take("value")
                if value is None:
                    raise line.error("literal requires value=", line.keyword_col)
                enum_literals.append(EnumLiteral(name, value, line.sid_attr("semanticId")))
                line.finish()
            elif kw == "end":
                line.no_extra_args(0)
                enums.append(EnumType(enum_head["name"], tuple(enum_literals), enum_head["open"],
                                      enum_head["value_type"]))
                enum_head, enum_literals = None, []
            else:
                raise line.error(f"{kw!r} not allowed inside enum", line.keyword_col)
            continue

        if record is not None:
            if kw == "field":
                if record.fields:
                    _freeze_field(record.fields[-1])
                record.fields.append(_field_from_line(line))
            elif kw == "note":
                note = line.arg(0, "text")
                line.no_extra_args(1)
                line.finish()
                if record.fields:
                    record.fields[-1]["notes"].append(note)
                else:
                    record.notes.append(note)
            elif kw == "alternative":
                if not record.fields:
                    raise line.error("alternative outside a field", line.keyword_col)
                value = line.arg(0, "a semanticId")
                line.no_extra_args(1)
                line.finish()
                record.fields[-1]["alternative_semantic_ids"].append(
                    line.parse_sid(value, line.args[0][1]))
            elif kw == "example":
                if not record.fields:
                    raise line.error("example outside a field", line.keyword_col)
                value = line.arg(0, "text")
                line.no_extra_args(1)
                ex = ExampleValue(value, line.take("lang"), line.take("unit"))
                line.finish()
                record.fields[-1]["examples"].append(ex)
            elif kw == "end":
                line.no_extra_args(0)
                if record.fields:
                    _freeze_field(record.fields[-1])
                (submodels if record.keyword == "submodel" else types).append(record.build())
                record = None
            else:
                raise line.error(f"{kw!r} not allowed inside {record.keyword}", line.keyword_col)
            continue

        if kw == "model":
            if spec_number is not None:
                raise line.error("duplicate model line", line.keyword_col)
            spec_number = line.arg(0, "a specification number")
            line.no_extra_args(1)
            line.finish()
        elif kw == "version":
            if version is not None:
                raise line.error("duplicate version line", line.keyword_col)
            text_v = line.arg(0, "a version")
            line.no_extra_args(1)
            line.finish()
            m = _VERSION_RE.match(text_v)
            if not m:
                raise line.error(f"malformed version {text_v!r}", line.args[0][1])
            version = (int(m.group(1)), int(m.group(2)))
        elif kw == "title":
            title = line.arg(0, "text")
            line.no_extra_args(1)
            line.finish()
        elif kw == "import":
            spec = line.arg(0, "a specification number")
            vtext = line.arg(1, "a version")
            m = _VERSION_RE.match(vtext)
            if not m:
                raise line.error(f"malformed version {vtext!r}", line.args[1][1])
            line.finish()
            imports.append(Import(spec, (int(m.group(1)), int(m.group(2))),
                                  tuple(a for a, _ in line.args[2:])))
        elif kw == "enum":
            name = line.arg(0, "a name")
            line.no_extra_args(1)
            vt = line.value_type_attr() or CanonicalValueType(ValueKind.String, "")
            enum_head = dict(name=name, open=line.bool_attr("open"), value_type=vt)
            line.finish()
        elif kw in ("record", "submodel"):
            record = _RecordBuilder(kw, line)
        else:
            raise line.error(f"{kw!r} outside a block", line.keyword_col)

    if record is not None or enum_head is not None:
        raise SmtkitError("SYNTAX_ERROR", "unterminated block at end of input",
                          f"line {text.count(chr(10)) + 1}, column 1")

    model = Model(spec_number or "", version, title, tuple(imports), tuple(submodels),
                  tuple(types), tuple(enums))
    report = validate_model(model)
    if not report.ok:
        raise SmtkitError("INVALID_MODEL", "; ".join(str(v) for v in report), detail=report)
    return model


def read_model(path) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SmtkitError("IO_ERROR", str(exc), str(path)) from exc
    return parse_model(text)


def write_model(model: Model, path) -> None:
    data = serialize_model(model).encode("utf-8")
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise SmtkitError("IO_ERROR", str(exc), str(path)) from exc
