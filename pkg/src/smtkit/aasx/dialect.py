"""AAS meta-model dialects and the element names that differ between them."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import SmtkitError
from .package import XmlPart

V2_NAMESPACE = "http://www.admin-shell.io/aas/2/0"
V3_NAMESPACE = "https://admin-shell.io/aas/3/0"


class DialectVersion(enum.Enum):
    V2 = "V2"
    V3 = "V3"


@dataclass(frozen=True)
class AasDialect:
    version: DialectVersion
    namespace: str

    @property
    def identifier_tag(self) -> str:
        return "identification" if self.version is DialectVersion.V2 else "id"

    @property
    def wraps_elements(self) -> bool:
        """v2 wraps every child element in a ``submodelElement`` node."""
        return self.version is DialectVersion.V2


def dialect_for_namespace(ns: str) -> AasDialect:
    if "/aas/2/0" in ns:
        return AasDialect(DialectVersion.V2, ns)
    if "/aas/3/0" in ns:
        return AasDialect(DialectVersion.V3, ns)
    raise SmtkitError("UNKNOWN_DIALECT", f"unrecognized namespace {ns!r}", detail=ns)


def detect_dialect(part: XmlPart) -> AasDialect:
    return dialect_for_namespace(part.namespace)
