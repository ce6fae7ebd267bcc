"""Intermediary meta-model, validation and the ``.smtm`` text format."""

from .textformat import parse_model, read_model, serialize_model, write_model
from .types import (AasField, CanonicalValueType, Cardinality, ElementKind, EnumLiteral, EnumType,
                    ExampleValue, IdShortSpec, Import, Model, Placeholder, RecordType, Scheme,
                    SemanticId, ValidationReport, ValueKind, Violation, parse_version,
                    sanitize_identifier)
from .validate import validate_model

__all__ = [
    "AasField", "CanonicalValueType", "Cardinality", "ElementKind", "EnumLiteral", "EnumType",
    "ExampleValue", "IdShortSpec", "Import", "Model", "Placeholder", "RecordType", "Scheme",
    "SemanticId", "ValidationReport", "ValueKind", "Violation", "parse_model", "parse_version",
    "read_model", "sanitize_identifier", "serialize_model", "validate_model", "write_model",
]
