"""Support code imported by generated builder and accessor modules."""

from __future__ import annotations

import datetime
import decimal
import re
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from typing import Any, Optional, Sequence

_IDENTIFIER_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class BuildError(ValueError):
    """Raised when a builder is fed a value or a structure its template forbids."""


@dataclass
class Element:
    kind: str
    id_short: str
    # name of the template field this element instantiates
    field: Optional[str] = None
    semantic_id: Optional[str] = None
    description: str = ""
    value: Any = None
    value_type: Optional[str] = None
    content_type: Optional[str] = None
    children: list["Element"] = dataclass_field(default_factory=list)

    def add(self, child: "Element") -> "Element":
        self.children.append(child)
        return child

    def find(self, field_name: str) -> list["Element"]:
        return [c for c in self.children if c.field == field_name]

    def child(self, id_short: str) -> Optional["Element"]:
        for c in self.children:
            if c.id_short == id_short:
                return c
        return None


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def check_value(value, value_type: str, field_name: str):
    """Return ``value`` if it fits ``value_type``, else raise BuildError."""
    ok = True
    if value_type in ("String", "LangString", "AnyUri", "Duration", "Reference"):
        ok = isinstance(value, str)
    elif value_type == "Integer":
        ok = _is_int(value)
    elif value_type == "NonNegativeInteger":
        ok = _is_int(value) and value >= 0
    elif value_type in ("Float", "Double"):
        ok = (_is_int(value) or isinstance(value, float))
        if ok:
            value = float(value)
    elif value_type == "Decimal":
        ok = _is_int(value) or isinstance(value, decimal.Decimal)
        if ok:
            value = decimal.Decimal(value)
    elif value_type == "Boolean":
        ok = isinstance(value, bool)
    elif value_type == "Date":
        ok = isinstance(value, datetime.date) and not isinstance(value, datetime.datetime)
    elif value_type == "DateTime":
        ok = isinstance(value, datetime.datetime)
    elif value_type == "Blob":
        ok = isinstance(value, (bytes, bytearray))
        if ok:
            value = bytes(value)
    else:
        raise BuildError(f"{field_name}: unknown value type {value_type!r}")
    if not ok:
        raise BuildError(f"{field_name}: {value!r} is not a valid {value_type}")
    return value


def check_enum(value, literals: Sequence[str], open_enum: bool, field_name: str):
    """Closed enumerations accept only their literals; open ones pass anything through."""
    if open_enum or str(value) in literals:
        return value
    raise BuildError(f"{field_name}: {value!r} is not one of {', '.join(literals)}")


def counting_id_short(base: str, index: int, digits: int) -> str:
    if not _is_int(index) or index < 1:
        raise BuildError(f"{base}: instance index must be a positive integer, got {index!r}")
    return f"{base}{index:0{max(digits, 1)}d}"


def user_id_short(id_short: Optional[str], default: str) -> str:
    if id_short is None:
        return default
    if not isinstance(id_short, str) or not _IDENTIFIER_RE.match(id_short):
        raise BuildError(f"{default}: {id_short!r} is not a legal idShort")
    return id_short


def check_free(parent: Element, id_short: str) -> str:
    """Named and indexed instances must not reuse an idShort within one parent."""
    if parent.child(id_short) is not None:
        raise BuildError(f"{parent.id_short}: idShort {id_short!r} is already used")
    return id_short


def select(semantic_id: Optional[str], primary: Optional[str], alternatives: Sequence[str],
           field_name: str) -> Optional[str]:
    """Pick the semanticId for one element; only the primary or a listed alternative is allowed."""
    if semantic_id is None or semantic_id == primary:
        return primary
    if semantic_id in alternatives:
        return semantic_id
    raise BuildError(f"{field_name}: semanticId {semantic_id!r} is not an allowed alternative")


def add_lang_string(parent: Element, field_name: str, id_short: str, semantic_id: Optional[str],
                    description: str, text: str, language: str) -> Element:
    """Add one language to a multi-language element, creating the element on first use."""
    if not isinstance(language, str) or not language:
        raise BuildError(f"{field_name}: language code must be a non-empty string")
    for c in parent.find(field_name):
        if c.id_short == id_short:
            c.value[language] = text
            return c
    return parent.add(Element("MultiLanguageProperty", id_short, field_name, semantic_id,
                              description, {language: text}, "LangString"))


def check_counts(element: Element, fields: Sequence[tuple[str, int, Optional[int]]]) -> None:
    """Every field must occur between its minimum and maximum number of times."""
    problems = []
    for name, low, high in fields:
        n = len(element.find(name))
        if n < low:
            problems.append(f"{name} set {n} times, needs at least {low}")
        elif high is not None and n > high:
            problems.append(f"{name} set {n} times, allows at most {high}")
    if problems:
        raise BuildError(f"{element.id_short}: " + "; ".join(problems))
