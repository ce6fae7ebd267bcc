"""Tolerant conversion of documented example texts into typed test values."""

from __future__ import annotations

import datetime
import decimal
import math
import re
from dataclasses import dataclass
from typing import Any, Optional

from ..model import CanonicalValueType, ExampleValue, ValueKind
from ..model.types import is_absolute_uri

DEFAULT_SUBSTITUTED = "DEFAULT_SUBSTITUTED"

DEFAULTS: dict[ValueKind, Any] = {
    ValueKind.String: "",
    ValueKind.LangString: ("", "en"),
    ValueKind.Integer: 0,
    ValueKind.NonNegativeInteger: 0,
    ValueKind.Float: 0.0,
    ValueKind.Double: 0.0,
    ValueKind.Decimal: decimal.Decimal(0),
    ValueKind.Boolean: False,
    ValueKind.Date: datetime.date(1970, 1, 1),
    ValueKind.DateTime: datetime.datetime(1970, 1, 1),
    ValueKind.Duration: "PT0S",
    ValueKind.AnyUri: "urn:example",
}


@dataclass(frozen=True)
class TypedValue:
    value: Any
    substituted: bool = False

    @property
    def marker(self) -> Optional[str]:
        return DEFAULT_SUBSTITUTED if self.substituted else None


_QUOTES = "\"'“”‘’«»"
_LANG_TAIL_RE = re.compile(r"@([a-zA-Z]{2,3}(?:-[a-zA-Z0-9]+)?)\s*$")
_BRACKET_RE = re.compile(r"\[[^\]]*\]\*?")
_PAREN_RE = re.compile(r"\([^)]*\)")
_INT_RE = re.compile(r"^[+-]?\d+")
_NUMBER_RE = re.compile(r"^[+-]?(\d+([.,]\d*)?|[.,]\d+)([eE][+-]?\d+)?")
_DURATION_RE = re.compile(r"^-?P(?=\d|T\d)(\d+Y)?(\d+M)?(\d+W)?(\d+D)?"
                          r"(T(?=\d)(\d+H)?(\d+M)?(\d+(\.\d+)?S)?)?$")
_DOTTED_DATE_RE = re.compile(r"^(\d{1,2})\.(\d{1,2})\.(\d{4})$")
_TRUE = {"true", "yes", "1", "y", "on", "wahr", "ja"}
_FALSE = {"false", "no", "0", "n", "off", "falsch", "nein"}


def _strip_quotes(text: str) -> str:
    text = text.strip()
    while len(text) >= 2 and text[0] in _QUOTES and text[-1] in _QUOTES:
        text = text[1:-1].strip()
    return text


def _core(text: str) -> str:
    """Example text without units, parenthesized explanations and quotes."""
    text = _BRACKET_RE.sub(" ", text)
    text = _PAREN_RE.sub(" ", text)
    return _strip_quotes(text)


def _first_line(text: str) -> str:
    for line in text.splitlines():
        if line.strip():
            return line.strip()
    return ""


def _number(text: str) -> Optional[str]:
    m = _NUMBER_RE.match(_core(text).replace(" ", ""))
    return m.group(0).replace(",", ".") if m else None


def _parse(text: str, kind: ValueKind, language: Optional[str]):
    """Return the parsed value or None."""
    if kind is ValueKind.String:
        value = _strip_quotes(_first_line(text) if "\n" in text else text)
        return value or None
    if kind is ValueKind.LangString:
        raw = _first_line(text)
        m = _LANG_TAIL_RE.search(raw)
        lang = language
        if m:
            lang = lang or m.group(1).lower()
            raw = raw[:m.start()]
        value = _strip_quotes(raw)
        return (value, lang or "en") if value else None
    if kind in (ValueKind.Integer, ValueKind.NonNegativeInteger):
        num = _number(text)
        if num is None:
            return None
        try:
            d = decimal.Decimal(num)
        except decimal.InvalidOperation:
            return None
        if d != d.to_integral_value():
            return None
        value = int(d)
        if kind is ValueKind.NonNegativeInteger and value < 0:
            return None
        return value
    if kind in (ValueKind.Float, ValueKind.Double):
        num = _number(text)
        if num is None:
            return None
        value = float(num)
        return value if math.isfinite(value) else None
    if kind is ValueKind.Decimal:
        num = _number(text)
        if num is None:
            return None
        try:
            return decimal.Decimal(num)
        except decimal.InvalidOperation:
            return None
    if kind is ValueKind.Boolean:
        word = _core(text).lower()
        if word in _TRUE:
            return True
        if word in _FALSE:
            return False
        return None
    if kind is ValueKind.Date:
        core = _core(text)
        m = _DOTTED_DATE_RE.match(core)
        try:
            if m:
                return datetime.date(int(m.group(3)), int(m.group(2)), int(m.group(1)))
            return datetime.date.fromisoformat(core[:10]) if len(core) >= 10 else None
        except ValueError:
            return None
    if kind is ValueKind.DateTime:
        core = _core(text)
        if core.endswith("Z"):
            core = core[:-1] + "+00:00"
        try:
            return datetime.datetime.fromisoformat(core)
        except ValueError:
            return None
    if kind is ValueKind.Duration:
        core = _core(text)
        return core if _DURATION_RE.match(core) else None
    if kind is ValueKind.AnyUri:
        core = _core(text)
        return core if is_absolute_uri(core) and " " not in core else None
    return None


def coerce_example(example: Optional[ExampleValue], target: CanonicalValueType) -> TypedValue:
    """Parse ``example`` as ``target``; fall back to the per-type default with a marker."""
    if example is not None and example.text.strip():
        value = _parse(example.text, target.kind, example.language)
        if value is not None:
            return TypedValue(value)
    return TypedValue(DEFAULTS[target.kind], True)
