"""AASX ingestion for the v2 and v3 AAS XML dialects."""

from .dialect import V2_NAMESPACE, V3_NAMESPACE, AasDialect, DialectVersion, detect_dialect
from .environment import extract_package, parse_environment, read_cardinality_qualifier
from .package import AasxPackage, XmlPart, open_package

__all__ = ["AasDialect", "AasxPackage", "DialectVersion", "V2_NAMESPACE", "V3_NAMESPACE",
           "XmlPart", "detect_dialect", "extract_package", "open_package", "parse_environment",
           "read_cardinality_qualifier"]
