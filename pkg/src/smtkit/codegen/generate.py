"""Builder, accessor and test generation for one Model and one template pack.

The generator prepares every name, signature and statement; templates only
decide layout. Output depends on nothing but the Model and the pack, so two
runs give byte-identical text.
"""

from __future__ import annotations

import decimal
import keyword
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from ..errors import SmtkitError
from ..model import (AasField, ElementKind, ExampleValue, Model, Placeholder, RecordType,
                     ValueKind, validate_model)
from ..model.types import CanonicalValueType
from .coerce import DEFAULT_SUBSTITUTED, TypedValue, coerce_example
from .pack import SourceFile, SourceSet, TemplatePack
from .template import render

RECURSION_DEPTH = 2

PY_TYPES = {
    ValueKind.String: "str", ValueKind.LangString: "str", ValueKind.Integer: "int",
    ValueKind.NonNegativeInteger: "int", ValueKind.Float: "float", ValueKind.Double: "float",
    ValueKind.Decimal: "decimal.Decimal", ValueKind.Boolean: "bool",
    ValueKind.Date: "datetime.date", ValueKind.DateTime: "datetime.datetime",
    ValueKind.Duration: "str", ValueKind.AnyUri: "str",
}

_STRING = CanonicalValueType(ValueKind.String, "")

ModelKey = tuple[str, Optional[tuple[int, int]]]


def snake(name: str) -> str:
    s = re.sub(r"([A-Z]+)([A-Z][a-z])", r"\1_\2", name)
    s = re.sub(r"([a-z0-9])([A-Z])", r"\1_\2", s)
    s = re.sub(r"[^a-zA-Z0-9_]", "_", s)
    s = re.sub(r"_+", "_", s).strip("_").lower() or "field"
    if s[0].isdigit() or keyword.iskeyword(s):
        s = f"f_{s}"
    return s


def builder_class(record_name: str) -> str:
    return f"{record_name}Builder"


def accessor_class(record_name: str) -> str:
    return f"{record_name}Accessor"


def enum_constant(enum_name: str) -> str:
    return f"{snake(enum_name).upper()}_LITERALS"


def py_literal(value) -> str:
    if isinstance(value, decimal.Decimal):
        return f"decimal.Decimal({str(value)!r})"
    return repr(value)


def docstring(lines: list[str], indent: str) -> str:
    """Docstring body safe to place between triple quotes at ``indent``."""
    parts = []
    for n, line in enumerate(lines):
        if n == 1:
            parts.append("")
        parts.extend(p.strip() for p in line.splitlines())
    while parts and not parts[-1]:
        parts.pop()
    text = "\n".join(parts).strip() or "Undocumented."
    text = text.replace("\\", "\\\\").replace('"""', '\\"\\"\\"')
    if text.endswith('"'):
        text += " "
    rows = text.split("\n")
    if len(rows) == 1:
        return rows[0]
    body = "\n".join((indent + r) if r else "" for r in rows[1:])
    return f"{rows[0]}\n{body}\n{indent}"


# -- per-field facts shared by all three generators ------------------------------

def is_counting(f: AasField) -> bool:
    return f.id_short.placeholder is Placeholder.COUNTING


def takes_name(f: AasField) -> bool:
    return not is_counting(f) and (f.id_short.user_chosen or f.allows_user_id_short)


@dataclass(frozen=True)
class FieldNames:
    setter: str
    getter: str
    element_getter: str
    index_getter: Optional[str]


@lru_cache(maxsize=None)
def method_names(record: RecordType) -> dict[str, FieldNames]:
    used = {"build"}

    def claim(name: str) -> str:
        candidate, n = name, 2
        while candidate in used:
            candidate, n = f"{name}_{n}", n + 1
        used.add(candidate)
        return candidate

    out = {}
    for f in record.fields:
        s = snake(f.name)
        setter = claim(("create_" if f.kind.is_container else "set_") + s)
        getter = claim(f"get_{s}")
        element_getter = claim(f"get_{s}_elements" if f.cardinality.multi else f"get_{s}_element")
        index_getter = claim(f"get_{s}_at") if is_counting(f) else None
        out[f.name] = FieldNames(setter, getter, element_getter, index_getter)
    return out


def _check_kind(record: RecordType, f: AasField) -> None:
    if f.kind is ElementKind.Submodel:
        raise SmtkitError("UNSUPPORTED_KIND", f"{f.kind.value} cannot be a field",
                          f"{record.name}/{f.name}")


def _require_valid(model: Model) -> None:
    # an out-of-scope kind is the more specific diagnosis, so it goes first
    for rec in model.records():
        for f in rec.fields:
            _check_kind(rec, f)
    report = validate_model(model)
    if not report.ok:
        raise SmtkitError("INVALID_MODEL", f"model has {len(report)} violation(s)",
                          model.spec_number, detail=report)


class _ModelView:
    """Name resolution for one model plus the models it imports."""

    def __init__(self, model: Model, pack: TemplatePack,
                 dependencies: Optional[Mapping[ModelKey, Model]] = None):
        self.model = model
        self.pack = pack
        self.dependencies = dict(dependencies or {})
        self.imported = model.imported_names()

    def value_type(self, f: AasField) -> CanonicalValueType:
        return f.value_type or _STRING

    def enum_of(self, f: AasField):
        return self.model.enum(f.type_ref) if f.type_ref else None

    def child_module(self, f: AasField, kind: str) -> Optional[str]:
        imp = self.imported.get(f.type_ref or "")
        if imp is None:
            return None
        return self.pack.module_name(kind, imp.spec_number, imp.version)

    def child(self, f: AasField, where: str) -> tuple[RecordType, "_ModelView"]:
        """The record type behind a container field and the view that owns it."""
        imp = self.imported.get(f.type_ref or "")
        if imp is None:
            rec = self.model.record(f.type_ref or "")
            if rec is None:
                raise SmtkitError("INVALID_MODEL", f"unknown type {f.type_ref!r}", where)
            return rec, self
        dep = self.dependencies.get((imp.spec_number, imp.version))
        rec = dep.record(f.type_ref) if dep is not None else None
        if rec is None:
            raise SmtkitError("UNRESOLVED_IMPORT",
                              f"{f.type_ref} from {imp.spec_number} "
                              f"{imp.version[0]}.{imp.version[1]} is not available", where)
        return rec, _ModelView(dep, self.pack, self.dependencies)


def _id_expr(f: AasField, merge_languages: bool = False) -> str:
    base = f.id_short.base
    if is_counting(f):
        expr = f"counting_id_short({base!r}, index, {max(f.id_short.digits, 1)})"
    elif takes_name(f):
        expr = f"user_id_short(id_short, {base!r})"
    else:
        return repr(base)
    return expr if merge_languages else f"check_free(self._element, {expr})"


def _semantic_expr(f: AasField) -> str:
    primary = f.semantic_id.value if f.semantic_id else None
    if f.alternative_semantic_ids:
        alts = tuple(s.value for s in f.alternative_semantic_ids)
        return f"select(semantic_id, {primary!r}, {alts!r}, {f.name!r})"
    return repr(primary)


def _field_doc(f: AasField, indent: str) -> str:
    lines = [f.description or f"Sets {f.name}."]
    lines.append(f"idShort {f.id_short.render()}, cardinality {f.cardinality.render()}.")
    if f.id_short.display_name:
        lines.append(f"Verbatim idShort: {f.id_short.display_name}")
    if f.advisory:
        lines.append(f"Advisory (derived from notes): {', '.join(f.advisory)}")
    return docstring(lines, indent)


# -- builder ------------------------------------------------------------------

def _setter(view: _ModelView, rec: RecordType, f: AasField, names: FieldNames) -> dict:
    params: list[str] = ["index: int"] if is_counting(f) else []
    sem, desc, tag = _semantic_expr(f), repr(f.description), repr(f.name)
    vt = view.value_type(f)
    py = PY_TYPES[vt.kind]
    body: list[str] = []
    kind = f.kind
    if kind is ElementKind.Property:
        params.append(f"value: {py}")
        body.append(f"value = check_value(value, {vt.kind.value!r}, {tag})")
        enum = view.enum_of(f)
        if enum is not None:
            body.append(f"value = check_enum(value, {enum_constant(enum.name)}, {enum.open}, {tag})")
        body.append(f"self._element.add(Element({kind.value!r}, {_id_expr(f)}, {tag}, {sem}, "
                    f"{desc}, value, {vt.kind.value!r}))")
    elif kind is ElementKind.MultiLanguageProperty:
        params += ["text: str", "language: str = 'en'"]
        body.append(f"add_lang_string(self._element, {tag}, {_id_expr(f, True)}, {sem}, {desc}, "
                    f"check_value(text, 'LangString', {tag}), language)")
    elif kind is ElementKind.Range:
        params += [f"low: {py}", f"high: {py}"]
        body.append(f"value = (check_value(low, {vt.kind.value!r}, {tag}), "
                    f"check_value(high, {vt.kind.value!r}, {tag}))")
        body.append(f"self._element.add(Element({kind.value!r}, {_id_expr(f)}, {tag}, {sem}, "
                    f"{desc}, value, {vt.kind.value!r}))")
    elif kind in (ElementKind.File, ElementKind.Blob):
        checked = "Blob" if kind is ElementKind.Blob else "String"
        params += [f"value: {'bytes' if kind is ElementKind.Blob else 'str'}",
                   "content_type: str = 'application/octet-stream'"]
        body.append(f"value = check_value(value, {checked!r}, {tag})")
        body.append(f"self._element.add(Element({kind.value!r}, {_id_expr(f)}, {tag}, {sem}, "
                    f"{desc}, value, content_type=content_type))")
    elif kind is ElementKind.ReferenceElement:
        params.append("value: str")
        body.append(f"value = check_value(value, 'Reference', {tag})")
        body.append(f"self._element.add(Element({kind.value!r}, {_id_expr(f)}, {tag}, {sem}, "
                    f"{desc}, value))")
    else:
        params += ["first: str", "second: str"]
        body.append(f"value = (check_value(first, 'Reference', {tag}), "
                    f"check_value(second, 'Reference', {tag}))")
        body.append(f"self._element.add(Element({kind.value!r}, {_id_expr(f)}, {tag}, {sem}, "
                    f"{desc}, value))")
    if takes_name(f):
        params.append("id_short: Optional[str] = None")
    if f.alternative_semantic_ids:
        params.append("semantic_id: Optional[str] = None")
    return {"method": names.setter, "params": "".join(f", {p}" for p in params),
            "doc": _field_doc(f, " " * 8), "body": [{"line": b} for b in body]}


def _creator(view: _ModelView, rec: RecordType, f: AasField, names: FieldNames) -> dict:
    params = ["index: int"] if is_counting(f) else []
    if takes_name(f):
        params.append("id_short: Optional[str] = None")
    if f.alternative_semantic_ids:
        params.append("semantic_id: Optional[str] = None")
    return {"method": names.setter, "params": "".join(f", {p}" for p in params),
            "doc": _field_doc(f, " " * 8), "child_builder": builder_class(f.type_ref or ""),
            "id_short_expr": _id_expr(f), "semantic_expr": _semantic_expr(f),
            "field_repr": repr(f.name)}


def _record_doc(rec: RecordType) -> str:
    lines = [rec.description or f"{rec.name} ({rec.kind.value})."]
    if rec.advisory:
        lines.append(f"Advisory (derived from notes): {', '.join(rec.advisory)}")
    return docstring(lines, " " * 4)


def _imports(view: _ModelView, kind: str, class_name) -> list[dict]:
    modules: dict[str, set[str]] = {}
    for rec in view.model.records():
        for f in rec.fields:
            if f.kind.is_container:
                module = view.child_module(f, kind)
                if module is not None:
                    modules.setdefault(module, set()).add(class_name(f.type_ref))
    return [{"module": m, "names": ", ".join(sorted(n))} for m, n in sorted(modules.items())]


def _header(model: Model) -> dict:
    return {"spec_number": model.spec_number, "version": model.version_text or "unversioned",
            "title": model.title or model.spec_number}


def generate_builder_api(model: Model, pack: TemplatePack) -> SourceSet:
    """One builder class per record type, rendered through ``pack``."""
    _require_valid(model)
    view = _ModelView(model, pack)
    records = []
    for rec in model.records():
        names = method_names(rec)
        setters, creators = [], []
        for f in rec.fields:
            if f.kind.is_container:
                creators.append(_creator(view, rec, f, names[f.name]))
            else:
                setters.append(_setter(view, rec, f, names[f.name]))
        specs = ", ".join(f"({f.name!r}, {f.cardinality.min}, {f.cardinality.max!r})"
                          for f in rec.fields)
        records.append({
            "name": rec.name, "builder": builder_class(rec.name), "doc": _record_doc(rec),
            "kind_repr": repr(rec.kind.value), "id_short_repr": repr(rec.name),
            "semantic_repr": repr(rec.semantic_id.value if rec.semantic_id else None),
            "desc_repr": repr(rec.description),
            "field_specs": specs + ("," if len(rec.fields) == 1 else ""),
            "setters": setters, "creators": creators,
        })
    enums = [{"constant": enum_constant(e.name), "name": e.name,
              "literals": ", ".join(repr(v) for v in e.values) + ("," if len(e.values) == 1 else ""),
              "open": e.open} for e in model.enums]
    context = dict(_header(model), records=records, enums=enums,
                   imports=_imports(view, "builder", builder_class))
    path = pack.file_name("builder", model.spec_number, model.version)
    return SourceSet((SourceFile(path, render(pack.templates["builder"], context,
                                              f"{pack.name}/builder")),))


# -- accessor -----------------------------------------------------------------

def _value_return(view: _ModelView, f: AasField) -> str:
    py = PY_TYPES[view.value_type(f).kind]
    kind = f.kind
    if kind is ElementKind.Range:
        return f"tuple[{py}, {py}]"
    if kind in (ElementKind.RelationshipElement, ElementKind.AnnotatedRelationshipElement):
        return "tuple[str, str]"
    if kind is ElementKind.Blob:
        return "bytes"
    if kind in (ElementKind.File, ElementKind.ReferenceElement, ElementKind.MultiLanguageProperty):
        return "str"
    if kind.is_container:
        return f'"{accessor_class(f.type_ref or "")}"'
    return py


def _getters(view: _ModelView, f: AasField, names: FieldNames) -> list[dict]:
    tag = repr(f.name)
    mlp = f.kind is ElementKind.MultiLanguageProperty
    wrap = accessor_class(f.type_ref or "") if f.kind.is_container else None
    lang_param = ", language: str = 'en'" if mlp else ""
    one = _value_return(view, f)
    doc = _field_doc(f, " " * 8).replace("Sets ", "Reads ", 1)

    def take(var: str) -> str:
        if wrap:
            return f"{wrap}({var})"
        return f"{var}.value.get(language)" if mlp else f"{var}.value"

    out = []
    if f.cardinality.multi:
        cond = " if language in e.value" if mlp else ""
        item = "e.value[language]" if mlp else take("e")
        out.append({"method": names.getter, "params": lang_param, "returns": f"list[{one}]",
                    "doc": doc,
                    "body": [{"line": f"return [{item} for e in self.element.find({tag}){cond}]"}]})
        out.append({"method": names.element_getter, "params": "", "returns": "list[Element]",
                    "doc": f"Elements behind {names.getter}; mutable.",
                    "body": [{"line": f"return self.element.find({tag})"}]})
    else:
        out.append({"method": names.getter, "params": lang_param, "returns": f"Optional[{one}]",
                    "doc": doc,
                    "body": [{"line": f"found = self.element.find({tag})"},
                             {"line": f"return {take('found[0]')} if found else None"}]})
        out.append({"method": names.element_getter, "params": "", "returns": "Optional[Element]",
                    "doc": f"Element behind {names.getter}; mutable.",
                    "body": [{"line": f"found = self.element.find({tag})"},
                             {"line": "return found[0] if found else None"}]})
    if names.index_getter:
        digits = max(f.id_short.digits, 1)
        out.append({"method": names.index_getter, "params": f", index: int{lang_param}",
                    "returns": f"Optional[{one}]",
                    "doc": f"Instance {f.id_short.base}<index> zero-padded to {digits} digits.",
                    "body": [{"line": "element = self.element.child("
                                      f"counting_id_short({f.id_short.base!r}, index, {digits}))"},
                             {"line": f"if element is None or element.field != {tag}:"},
                             {"line": "    return None"},
                             {"line": f"return {take('element')}"}]})
    return out


def generate_accessor_api(model: Model, pack: TemplatePack) -> SourceSet:
    """One accessor class per record type with value, element and index getters."""
    _require_valid(model)
    view = _ModelView(model, pack)
    records = []
    for rec in model.records():
        names = method_names(rec)
        getters = []
        for f in rec.fields:
            getters.extend(_getters(view, f, names[f.name]))
        records.append({"name": rec.name, "accessor": accessor_class(rec.name),
                        "doc": _record_doc(rec), "getters": getters})
    context = dict(_header(model), records=records,
                   imports=_imports(view, "accessor", accessor_class))
    path = pack.file_name("accessor", model.spec_number, model.version)
    return SourceSet((SourceFile(path, render(pack.templates["accessor"], context,
                                              f"{pack.name}/accessor")),))


# -- tests --------------------------------------------------------------------

def instance_count(f: AasField) -> int:
    card = f.cardinality
    wanted = 2 if is_counting(f) else 1
    wanted = max(wanted, card.min)
    return wanted if card.max is None else min(wanted, card.max)


def _example(f: AasField, i: int) -> Optional[ExampleValue]:
    if not f.examples:
        return None
    return f.examples[min(i, len(f.examples) - 1)]


def _test_value(view: _ModelView, f: AasField, i: int) -> TypedValue:
    """Value for the ``i``-th instance of a non-container field."""
    ex = _example(f, i)
    kind = f.kind
    if kind is ElementKind.Property:
        tv = coerce_example(ex, view.value_type(f))
        enum = view.enum_of(f)
        if enum is not None and not enum.open and enum.values and str(tv.value) not in enum.values:
            lit = coerce_example(ExampleValue(enum.values[0]), view.value_type(f))
            tv = TypedValue(lit.value, True)
        return tv
    if kind is ElementKind.MultiLanguageProperty:
        return coerce_example(ex, CanonicalValueType(ValueKind.LangString))
    if kind is ElementKind.Range:
        tv = coerce_example(ex, view.value_type(f))
        return TypedValue((tv.value, tv.value), tv.substituted)
    if kind is ElementKind.Blob:
        if ex is not None and ex.text.strip():
            return TypedValue(ex.text.strip().encode("utf-8"))
        return TypedValue(b"", True)
    tv = coerce_example(ex, _STRING)
    if kind in (ElementKind.RelationshipElement, ElementKind.AnnotatedRelationshipElement):
        return TypedValue((tv.value, tv.value), tv.substituted)
    return tv


class _TestWriter:
    def __init__(self):
        self.build: list[str] = []
        self.check: list[str] = []
        self.counter = 0

    def var(self) -> int:
        self.counter += 1
        return self.counter

    def exercise(self, view: _ModelView, rec: RecordType, b: str, a: str,
                 chain: tuple[tuple[str, str], ...]) -> None:
        names = method_names(rec)
        for f in rec.fields:
            n = names[f.name]
            count = instance_count(f)
            where = f"{view.model.spec_number}/{rec.name}/{f.name}"
            if f.kind.is_container:
                child, child_view = view.child(f, where)
                key = (child_view.model.spec_number, child.name)
                if chain.count(key) >= RECURSION_DEPTH:
                    self.build.append(f"# {f.name}: recursion into {child.name} stops at depth "
                                      f"{RECURSION_DEPTH}")
                    continue
                for i in range(1, count + 1):
                    k = self.var()
                    arg = str(i) if is_counting(f) else ""
                    self.build.append(f"b{k} = {b}.{n.setter}({arg})")
                    if is_counting(f):
                        self.check.append(f"a{k} = {a}.{n.index_getter}({i})")
                    elif f.cardinality.multi:
                        self.check.append(f"a{k} = {a}.{n.getter}()[{i - 1}]")
                    else:
                        self.check.append(f"a{k} = {a}.{n.getter}()")
                    self.check.append(f"assert a{k} is not None")
                    self.exercise(child_view, child, f"b{k}", f"a{k}", chain + (key,))
                continue
            expected = []
            for i in range(1, count + 1):
                tv = _test_value(view, f, i - 1)
                note = f"# {DEFAULT_SUBSTITUTED}: no usable example for {f.name}"
                if tv.substituted:
                    self.build.append(note)
                args = self._args(f, tv.value, i)
                self.build.append(f"{b}.{n.setter}({args})")
                value = tv.value[0] if f.kind is ElementKind.MultiLanguageProperty else tv.value
                lang = f"{tv.value[1]!r}" if f.kind is ElementKind.MultiLanguageProperty else ""
                if is_counting(f):
                    if tv.substituted:
                        self.check.append(note)
                    idx_args = f"{i}, {lang}" if lang else f"{i}"
                    self.check.append(f"assert {a}.{n.index_getter}({idx_args}) == "
                                      f"{py_literal(value)}")
                else:
                    expected.append((value, lang, tv.substituted))
            if expected:
                lang = expected[0][1]
                if any(s for _, _, s in expected):
                    self.check.append(f"# {DEFAULT_SUBSTITUTED}: no usable example for {f.name}")
                if f.cardinality.multi:
                    want = "[" + ", ".join(py_literal(v) for v, _, _ in expected) + "]"
                else:
                    want = py_literal(expected[0][0])
                self.check.append(f"assert {a}.{n.getter}({lang}) == {want}")

    @staticmethod
    def _args(f: AasField, value, i: int) -> str:
        args = [str(i)] if is_counting(f) else []
        if f.kind in (ElementKind.MultiLanguageProperty, ElementKind.Range,
                      ElementKind.RelationshipElement, ElementKind.AnnotatedRelationshipElement):
            args += [py_literal(v) for v in value]
        else:
            args.append(py_literal(value))
        return ", ".join(args)


def generate_tests(model: Model, pack: TemplatePack,
                   dependencies: Optional[Mapping[ModelKey, Model]] = None) -> SourceSet:
    """Per submodel a build-then-read test seeded with coerced examples."""
    _require_valid(model)
    view = _ModelView(model, pack, dependencies)
    submodels = []
    for sm in model.submodels:
        w = _TestWriter()
        w.exercise(view, sm, "b0", "a0", ((model.spec_number, sm.name),))
        submodels.append({
            "name": sm.name, "test_name": f"test_{snake(sm.name)}_builds_and_reads",
            "builder": builder_class(sm.name), "accessor": accessor_class(sm.name),
            "semantic_repr": repr(sm.semantic_id.value if sm.semantic_id else None),
            "build_lines": [{"line": ln} for ln in w.build],
            "check_lines": [{"line": ln} for ln in w.check],
        })
    context = dict(_header(model), submodels=submodels,
                   builder_module=pack.module_name("builder", model.spec_number, model.version),
                   accessor_module=pack.module_name("accessor", model.spec_number, model.version),
                   builders=", ".join(sorted(s["builder"] for s in submodels)),
                   accessors=", ".join(sorted(s["accessor"] for s in submodels)))
    text = render(pack.templates["test"], context, f"{pack.name}/test")
    return SourceSet((SourceFile(pack.file_name("test", model.spec_number, model.version), text),))


def dependency_closure(model: Model, available: Mapping[ModelKey, Model]) -> list[Model]:
    """Imported models, transitively, in a stable order; missing ones raise UNRESOLVED_IMPORT."""
    out: dict[ModelKey, Model] = {}
    pending = list(model.imports)
    while pending:
        imp = pending.pop(0)
        key = (imp.spec_number, imp.version)
        if key in out:
            continue
        dep = available.get(key)
        if dep is None:
            raise SmtkitError("UNRESOLVED_IMPORT",
                              f"imported model {imp.spec_number} "
                              f"{imp.version[0]}.{imp.version[1]} is not available",
                              model.spec_number)
        out[key] = dep
        pending.extend(dep.imports)
    return [out[k] for k in sorted(out, key=lambda k: (k[0], k[1] or (0, 0)))]


def generate_sources(model: Model, pack: TemplatePack,
                     available: Optional[Mapping[ModelKey, Model]] = None
                     ) -> tuple[SourceSet, SourceSet]:
    """API sources for the model and its imports, plus the model's tests."""
    deps = dependency_closure(model, available or {})
    api = SourceSet()
    for m in [model] + deps:
        api = api + generate_builder_api(m, pack) + generate_accessor_api(m, pack)
    tests = generate_tests(model, pack, {(d.spec_number, d.version): d for d in deps})
    return api, tests
