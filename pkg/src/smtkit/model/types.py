"""Intermediary meta-model: records, fields, enumerations and their parts.

All values are frozen dataclasses holding tuples, so models can be shared
freely and compared structurally with ``==``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional
from urllib.parse import urlsplit

IDENTIFIER_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

_ECLASS_IRDI_RE = re.compile(r"\d{4}-\d+#\d{2}-[A-Z0-9]{6}#\d{3}(\*\d+)?\Z")
_IEC_IRDI_RE = re.compile(r"\d{4}/\d+/{2,3}[\w\-.]+#[A-Z0-9_]{3,}#\d{3}\Z")
_URI_SCHEME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9+.\-]*\Z")
_IRI_VERSION_RE = re.compile(r"/(\d+)/(\d+)\Z")
_IRDI_VERSION_RE = re.compile(r"#(\d{3})\Z")


class Scheme(enum.Enum):
    IRI = "IRI"
    IRDI = "IRDI"
    LOCAL = "LOCAL"


def is_absolute_uri(text: str) -> bool:
    try:
        parts = urlsplit(text)
    except ValueError:
        return False
    if not parts.scheme or not _URI_SCHEME_RE.match(parts.scheme):
        return False
    return bool(parts.netloc or parts.path)


def is_irdi(text: str) -> bool:
    return bool(_ECLASS_IRDI_RE.match(text) or _IEC_IRDI_RE.match(text))


@dataclass(frozen=True)
class SemanticId:
    scheme: Scheme
    value: str
    version: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "SemanticId":
        """Build a semantic identifier, inferring scheme and trailing version."""
        value = text.strip()
        if is_irdi(value):
            m = _IRDI_VERSION_RE.search(value)
            return cls(Scheme.IRDI, value, m.group(1) if m else None)
        if is_absolute_uri(value) and "://" in value or value.startswith("urn:"):
            m = _IRI_VERSION_RE.search(value)
            return cls(Scheme.IRI, value, f"{m.group(1)}/{m.group(2)}" if m else None)
        return cls(Scheme.LOCAL, value, None)

    @property
    def unversioned(self) -> str:
        """The identifier with its trailing version segment removed."""
        if self.scheme is Scheme.IRI:
            return _IRI_VERSION_RE.sub("", self.value)
        if self.scheme is Scheme.IRDI:
            return _IRDI_VERSION_RE.sub("", self.value)
        return self.value

    def problems(self) -> list[str]:
        out = []
        if not self.value or any(c.isspace() for c in self.value):
            out.append("semanticId value is empty or contains whitespace")
        if self.scheme is Scheme.IRI and not is_absolute_uri(self.value):
            out.append(f"semanticId {self.value!r} is not an absolute URI")
        return out

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Cardinality:
    min: int = 1
    max: Optional[int] = 1

    def __post_init__(self):
        if self.min < 0:
            raise ValueError(f"cardinality min must be non-negative, got {self.min}")
        if self.max is not None and (self.max < 1 or self.max < self.min):
            raise ValueError(f"cardinality max {self.max} invalid for min {self.min}")

    @property
    def unbounded(self) -> bool:
        return self.max is None

    @property
    def multi(self) -> bool:
        return self.max is None or self.max > 1

    @property
    def mandatory(self) -> bool:
        return self.min >= 1

    def admits(self, count: int) -> bool:
        return count >= self.min and (self.max is None or count <= self.max)

    def render(self) -> str:
        return f"{self.min}..{'*' if self.max is None else self.max}"

    def __str__(self) -> str:
        return self.render()


class ValueKind(enum.Enum):
    String = "String"
    LangString = "LangString"
    Integer = "Integer"
    NonNegativeInteger = "NonNegativeInteger"
    Float = "Float"
    Double = "Double"
    Boolean = "Boolean"
    Date = "Date"
    DateTime = "DateTime"
    Duration = "Duration"
    AnyUri = "AnyUri"
    Decimal = "Decimal"


@dataclass(frozen=True)
class CanonicalValueType:
    kind: ValueKind
    raw: str = ""

    def __str__(self) -> str:
        return self.kind.value


class ElementKind(enum.Enum):
    Property = "Property"
    MultiLanguageProperty = "MultiLanguageProperty"
    File = "File"
    Blob = "Blob"
    Range = "Range"
    ReferenceElement = "ReferenceElement"
    RelationshipElement = "RelationshipElement"
    AnnotatedRelationshipElement = "AnnotatedRelationshipElement"
    SubmodelElementCollection = "SubmodelElementCollection"
    Entity = "Entity"
    Submodel = "Submodel"

    @property
    def is_container(self) -> bool:
        return self in CONTAINER_KINDS


CONTAINER_KINDS = frozenset({ElementKind.Submodel, ElementKind.SubmodelElementCollection,
                             ElementKind.Entity})


class Placeholder(enum.Enum):
    NONE = "None"
    COUNTING = "Counting"
    ARBITRARY = "Arbitrary"
    VARIABLE = "Variable"
    FREE_TEXT = "FreeText"


@dataclass(frozen=True)
class IdShortSpec:
    """An idShort as written in a specification.

    ``base`` is the name outside any curly-brace placeholder. ``digits`` is the
    zero-padding width of a counting placeholder (``{00}`` gives 2).
    ``display_name`` keeps the verbatim original when ``base`` was sanitized.
    """

    base: str
    placeholder: Placeholder = Placeholder.NONE
    placeholder_text: Optional[str] = None
    digits: int = 0
    display_name: Optional[str] = None

    @property
    def user_chosen(self) -> bool:
        return self.placeholder in (Placeholder.ARBITRARY, Placeholder.VARIABLE,
                                    Placeholder.FREE_TEXT)

    def instance_name(self, index: int) -> str:
        """idShort of the ``index``-th instance of a counting placeholder."""
        return f"{self.base}{index:0{max(self.digits, 1)}d}"

    def render(self) -> str:
        if self.placeholder is Placeholder.NONE:
            return self.base
        if self.placeholder is Placeholder.COUNTING:
            return f"{self.base}{{{'0' * max(self.digits, 1)}}}"
        if self.placeholder is Placeholder.ARBITRARY:
            return f"{self.base}{{arbitrary}}"
        if self.placeholder is Placeholder.VARIABLE:
            return f"{self.base}{{variable}}"
        return f"{self.base}{{{self.placeholder_text or ''}}}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ExampleValue:
    text: str
    language: Optional[str] = None
    unit: Optional[str] = None


@dataclass(frozen=True)
class AasField:
    id_short: IdShortSpec
    kind: ElementKind = ElementKind.Property
    value_type: Optional[CanonicalValueType] = None
    type_ref: Optional[str] = None
    semantic_id: Optional[SemanticId] = None
    alternative_semantic_ids: tuple[SemanticId, ...] = ()
    cardinality: Cardinality = Cardinality(1, 1)
    description: str = ""
    notes: tuple[str, ...] = ()
    examples: tuple[ExampleValue, ...] = ()
    allows_user_id_short: bool = False
    ordered: bool = False
    # flags that were derived from notes; whether notes are normative is unclear
    advisory: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        return self.id_short.base


@dataclass(frozen=True)
class RecordType:
    name: str
    kind: ElementKind = ElementKind.SubmodelElementCollection
    semantic_id: Optional[SemanticId] = None
    description: str = ""
    fields: tuple[AasField, ...] = ()
    allows_user_id_short: bool = False
    notes: tuple[str, ...] = ()
    advisory: tuple[str, ...] = ()

    def field(self, name: str) -> Optional[AasField]:
        for f in self.fields:
            if f.name == name:
                return f
        return None


@dataclass(frozen=True)
class EnumLiteral:
    name: str
    value: str
    semantic_id: Optional[SemanticId] = None


@dataclass(frozen=True)
class EnumType:
    name: str
    literals: tuple[EnumLiteral, ...] = ()
    open: bool = False
    value_type: CanonicalValueType = CanonicalValueType(ValueKind.String, "")

    @property
    def values(self) -> tuple[str, ...]:
        return tuple(lit.value for lit in self.literals)


@dataclass(frozen=True)
class Import:
    spec_number: str
    version: tuple[int, int]
    names: tuple[str, ...] = ()


@dataclass(frozen=True)
class Model:
    spec_number: str
    version: Optional[tuple[int, int]]
    title: str = ""
    imports: tuple[Import, ...] = ()
    submodels: tuple[RecordType, ...] = ()
    types: tuple[RecordType, ...] = ()
    enums: tuple[EnumType, ...] = ()

    @property
    def version_text(self) -> str:
        if self.version is None:
            return ""
        return f"{self.version[0]}.{self.version[1]}"

    def records(self) -> Iterator[RecordType]:
        yield from self.submodels
        yield from self.types

    def record(self, name: str) -> Optional[RecordType]:
        for r in self.records():
            if r.name == name:
                return r
        return None

    def enum(self, name: str) -> Optional[EnumType]:
        for e in self.enums:
            if e.name == name:
                return e
        return None

    def imported_names(self) -> dict[str, Import]:
        return {n: imp for imp in self.imports for n in imp.names}

    def key(self) -> str:
        """Registry file stem, ``<specNumber>-<major>-<minor>``."""
        major, minor = self.version or (0, 0)
        return f"{self.spec_number}-{major}-{minor}"


def parse_version(text: str) -> Optional[tuple[int, int]]:
    """Parse "1.0", "1-2", "V2.0", "1/0" or "1"; a missing minor is 0."""
    m = re.search(r"(\d+)(?:\s*[.\-/_]\s*(\d+))?", text or "")
    if not m:
        return None
    return int(m.group(1)), int(m.group(2) or 0)


def sanitize_identifier(text: str) -> str:
    """Drop non-identifier characters; prefix when the result starts badly."""
    cleaned = re.sub(r"[^a-zA-Z0-9_]", "", text)
    if not cleaned:
        return "Unnamed"
    if not cleaned[0].isalpha():
        cleaned = "N" + cleaned
    return cleaned


@dataclass(frozen=True)
class Violation:
    code: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} {self.path}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]
