"""Tolerant mapping of value-type and element-kind spellings.

The alias tables were assembled from spellings seen in specification tables:
XML-schema names with and without prefixes, plurals, abbreviations and typos.
"""

from __future__ import annotations

import re
from typing import Optional

from ..errors import Finding, Location, Severity
from ..model.types import CanonicalValueType, ElementKind, ValueKind

TYPE_ALIASES: dict[str, ValueKind] = {
    # strings
    "string": ValueKind.String, "str": ValueKind.String, "strng": ValueKind.String,
    "sting": ValueKind.String, "text": ValueKind.String, "normalizedstring": ValueKind.String,
    "token": ValueKind.String, "char": ValueKind.String, "character": ValueKind.String,
    "id": ValueKind.String, "identifier": ValueKind.String,
    # language strings
    "langstring": ValueKind.LangString, "langstringset": ValueKind.LangString,
    "multilanguage": ValueKind.LangString, "multilanguagestring": ValueKind.LangString,
    "multilanguageproperty": ValueKind.LangString, "mlp": ValueKind.LangString,
    "languagestring": ValueKind.LangString, "stringtranslatable": ValueKind.LangString,
    "langstringtexttype": ValueKind.LangString,
    # integers
    "integer": ValueKind.Integer, "int": ValueKind.Integer, "intger": ValueKind.Integer,
    "interger": ValueKind.Integer, "integr": ValueKind.Integer, "inetger": ValueKind.Integer,
    "integar": ValueKind.Integer, "long": ValueKind.Integer, "short": ValueKind.Integer,
    "byte": ValueKind.Integer, "int32": ValueKind.Integer, "int64": ValueKind.Integer,
    "integercount": ValueKind.Integer, "integermeasure": ValueKind.Integer,
    "negativeinteger": ValueKind.Integer, "nonpositiveinteger": ValueKind.Integer,
    # non-negative integers
    "nonnegativeinteger": ValueKind.NonNegativeInteger,
    "positiveinteger": ValueKind.NonNegativeInteger, "unsignedint": ValueKind.NonNegativeInteger,
    "unsignedlong": ValueKind.NonNegativeInteger, "unsignedshort": ValueKind.NonNegativeInteger,
    "unsignedbyte": ValueKind.NonNegativeInteger, "uint": ValueKind.NonNegativeInteger,
    "nonnegativeint": ValueKind.NonNegativeInteger,
    # floating point
    "float": ValueKind.Float, "real": ValueKind.Float, "realmeasure": ValueKind.Float,
    "single": ValueKind.Float, "flaot": ValueKind.Float,
    "double": ValueKind.Double, "doble": ValueKind.Double, "dobule": ValueKind.Double,
    "realcount": ValueKind.Double, "number": ValueKind.Double,
    "decimal": ValueKind.Decimal, "decimals": ValueKind.Decimal, "rational": ValueKind.Decimal,
    # booleans
    "boolean": ValueKind.Boolean, "bool": ValueKind.Boolean, "booelan": ValueKind.Boolean,
    "bolean": ValueKind.Boolean,
    # dates and times
    "date": ValueKind.Date, "datetime": ValueKind.DateTime, "timestamp": ValueKind.DateTime,
    "datetimestamp": ValueKind.DateTime, "time": ValueKind.DateTime,
    "duration": ValueKind.Duration, "timespan": ValueKind.Duration,
    "daytimeduration": ValueKind.Duration, "yearmonthduration": ValueKind.Duration,
    # URIs
    "anyuri": ValueKind.AnyUri, "uri": ValueKind.AnyUri, "url": ValueKind.AnyUri,
    "iri": ValueKind.AnyUri, "anyurl": ValueKind.AnyUri,
}

KIND_ALIASES: dict[str, ElementKind] = {
    "property": ElementKind.Property, "prop": ElementKind.Property,
    "properties": ElementKind.Property,
    "multilanguageproperty": ElementKind.MultiLanguageProperty,
    "mlp": ElementKind.MultiLanguageProperty,
    "multilangproperty": ElementKind.MultiLanguageProperty,
    "multilanguage": ElementKind.MultiLanguageProperty,
    "file": ElementKind.File, "blob": ElementKind.Blob, "range": ElementKind.Range,
    "referenceelement": ElementKind.ReferenceElement, "reference": ElementKind.ReferenceElement,
    "ref": ElementKind.ReferenceElement, "refelement": ElementKind.ReferenceElement,
    "relationshipelement": ElementKind.RelationshipElement,
    "relationship": ElementKind.RelationshipElement, "rel": ElementKind.RelationshipElement,
    "relelement": ElementKind.RelationshipElement,
    "annotatedrelationshipelement": ElementKind.AnnotatedRelationshipElement,
    "annotatedrelationship": ElementKind.AnnotatedRelationshipElement,
    "arel": ElementKind.AnnotatedRelationshipElement,
    "submodelelementcollection": ElementKind.SubmodelElementCollection,
    "smc": ElementKind.SubmodelElementCollection,
    "collection": ElementKind.SubmodelElementCollection,
    "submodelcollection": ElementKind.SubmodelElementCollection,
    "elementcollection": ElementKind.SubmodelElementCollection,
    # lists are realized as collections
    "submodelelementlist": ElementKind.SubmodelElementCollection,
    "sml": ElementKind.SubmodelElementCollection,
    "list": ElementKind.SubmodelElementCollection,
    "entity": ElementKind.Entity,
    "submodel": ElementKind.Submodel, "sm": ElementKind.Submodel,
}

_PREFIX_RE = re.compile(r"^(xs|xsd|xml|rdf|aas|iec|dt)[:_]")


def _canon(raw: str) -> str:
    s = raw.strip().lower()
    s = s.strip("[]()<>\"'`")
    s = _PREFIX_RE.sub("", s)
    s = re.sub(r"[\s\-_]+", "", s)
    s = s.rstrip(".:")
    return s


def _lookup(table, raw: str):
    s = _canon(raw)
    if not s:
        return None
    if s in table:
        return table[s]
    if s.endswith("s") and s[:-1] in table:
        return table[s[:-1]]
    if s.endswith("type") and s[:-4] in table:
        return table[s[:-4]]
    return None


def lookup_type(raw: Optional[str]) -> Optional[ValueKind]:
    """The canonical kind for a spelling, or None when it is not in the table."""
    if not raw:
        return None
    return _lookup(TYPE_ALIASES, raw)


def lookup_kind(raw: Optional[str]) -> Optional[ElementKind]:
    if not raw:
        return None
    return _lookup(KIND_ALIASES, raw)


def is_type_token(token: str) -> bool:
    """True when ``token`` reads as a value-type or element-kind name."""
    token = token.strip()
    if not token or len(token) > 40:
        return False
    if lookup_type(token) is not None or lookup_kind(token) is not None:
        return True
    return bool(re.match(r"(xs|xsd):[A-Za-z]+\Z", token))


def normalize_type(raw: str, element_kind: Optional[ElementKind] = None,
                   findings: Optional[list[Finding]] = None,
                   location: Location = Location()) -> CanonicalValueType:
    """Map a raw value-type spelling into the closed canonical set.

    Lookup is case-, whitespace- and prefix-insensitive. Multi-language
    properties always normalize to ``LangString``. Unknown spellings fall
    back to ``String``; a ``TYPE_FALLBACK`` finding is appended to
    ``findings`` when a list is given.
    """
    raw = raw or ""
    if element_kind is ElementKind.MultiLanguageProperty:
        return CanonicalValueType(ValueKind.LangString, raw)
    kind = lookup_type(raw)
    if kind is None:
        if findings is not None:
            findings.append(Finding("TYPE_FALLBACK", Severity.WARNING, location,
                                    f"unknown value type {raw!r}, using String"))
        kind = ValueKind.String
    return CanonicalValueType(kind, raw)
