"""AASX containers: zip parts, relationship manifests, AAS XML discovery."""

from __future__ import annotations

import posixpath
import xml.etree.ElementTree as ET
import zipfile
from dataclasses import dataclass, field
from io import BytesIO
from pathlib import Path
from typing import Optional

from ..errors import SmtkitError

_RELS_NS_SUFFIX = "package/2006/relationships"


def local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if isinstance(tag, str) else ""


def namespace_of(tag: str) -> str:
    return tag[1:].split("}", 1)[0] if isinstance(tag, str) and tag.startswith("{") else ""


@dataclass(frozen=True)
class XmlPart:
    path: str
    data: bytes
    namespace: str

    def root(self) -> ET.Element:
        try:
            return ET.fromstring(self.data)
        except ET.ParseError as exc:
            raise SmtkitError("XML_MALFORMED", str(exc), self.path) from None


@dataclass
class AasxPackage:
    path: str
    parts: list[tuple[str, bytes]] = field(default_factory=list)
    xml_parts: list[XmlPart] = field(default_factory=list)
    # targets named by relationship manifests that are not in the archive
    missing_parts: list[str] = field(default_factory=list)

    def part(self, name: str) -> Optional[bytes]:
        for p, data in self.parts:
            if p == name:
                return data
        return None


def _root_namespace(data: bytes) -> Optional[str]:
    """Namespace URI of the document element, reading only up to its start tag."""
    try:
        for _, elem in ET.iterparse(BytesIO(data), events=("start",)):
            return namespace_of(elem.tag)
    except ET.ParseError:
        return None
    return None


def _relationship_targets(name: str, data: bytes) -> list[str]:
    try:
        root = ET.fromstring(data)
    except ET.ParseError:
        return []
    base = posixpath.dirname(posixpath.dirname(name))
    out = []
    for rel in root.iter():
        if local_name(rel.tag) != "Relationship" or rel.get("TargetMode") == "External":
            continue
        target = rel.get("Target", "")
        if not target:
            continue
        if target.startswith("/"):
            resolved = target.lstrip("/")
        else:
            resolved = posixpath.normpath(posixpath.join(base, target))
        out.append(resolved)
    return out


def is_aas_namespace(ns: str) -> bool:
    return "/aas/" in ns


def open_package(path) -> AasxPackage:
    """Enumerate every part and find AAS XML parts by scanning root namespaces.

    Relationship manifests are read, but a target they name that is absent
    from the archive is only recorded in ``missing_parts``.
    """
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SmtkitError("IO_ERROR", str(exc), str(path)) from exc
    try:
        zf = zipfile.ZipFile(BytesIO(raw))
    except zipfile.BadZipFile:
        raise SmtkitError("NOT_AN_AASX", "file is not a zip archive", str(path)) from None
    pkg = AasxPackage(str(path))
    with zf:
        for info in zf.infolist():
            if info.is_dir():
                continue
            try:
                pkg.parts.append((info.filename, zf.read(info)))
            except (zipfile.BadZipFile, OSError, RuntimeError) as exc:
                raise SmtkitError("IO_ERROR", str(exc), f"{path}!{info.filename}") from exc

    names = {p for p, _ in pkg.parts}
    for name, data in pkg.parts:
        if name.endswith(".rels"):
            for target in _relationship_targets(name, data):
                if target not in names and target not in pkg.missing_parts:
                    pkg.missing_parts.append(target)
            continue
        if data.lstrip(b"\xef\xbb\xbf \t\r\n")[:1] != b"<":
            continue
        ns = _root_namespace(data)
        if ns and is_aas_namespace(ns):
            pkg.xml_parts.append(XmlPart(name, data, ns))
    if not pkg.xml_parts:
        raise SmtkitError("NOT_AN_AASX", "no part has a root element in an AAS namespace", str(path))
    return pkg
