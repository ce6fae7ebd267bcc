from __future__ import annotations

import xml.etree.ElementTree as ET
import zipfile

import pytest

from smtkit.aasx import (V2_NAMESPACE, V3_NAMESPACE, DialectVersion, XmlPart, detect_dialect,
                         extract_package, open_package, parse_environment,
                         read_cardinality_qualifier)
from smtkit.errors import SmtkitError
from smtkit.grid import normalize_type
from smtkit.model import ElementKind, Placeholder

from conftest import FIXTURES


def part(ns: str, body: str = "") -> XmlPart:
    return XmlPart("env.xml", f'<environment xmlns="{ns}">{body}</environment>'.encode(), ns)


class TestPackage:
    def test_v3_package_has_one_xml_part(self):
        pkg = open_package(FIXTURES / "02099-sample-v3.aasx")
        assert len(pkg.xml_parts) == 1

    def test_images_only(self):
        with pytest.raises(SmtkitError) as ei:
            open_package(FIXTURES / "images-only.aasx")
        assert ei.value.code == "NOT_AN_AASX"

    def test_manifest_target_missing_but_scan_finds_part(self):
        pkg = open_package(FIXTURES / "02096-manifest-missing.aasx")
        assert pkg.missing_parts == ["aasx/data/does-not-exist.aas.xml"]
        assert [p.path for p in pkg.xml_parts] == ["aasx/elsewhere/scanned.aas.xml"]
        assert extract_package(FIXTURES / "02096-manifest-missing.aasx").row_count() > 0

    def test_not_a_zip(self, tmp_path):
        p = tmp_path / "x.aasx"
        p.write_bytes(b"plain text")
        with pytest.raises(SmtkitError) as ei:
            open_package(p)
        assert ei.value.code == "NOT_AN_AASX"

    def test_missing_file(self, tmp_path):
        with pytest.raises(SmtkitError) as ei:
            open_package(tmp_path / "nope.aasx")
        assert ei.value.code == "IO_ERROR"

    def test_malformed_xml(self, tmp_path):
        p = tmp_path / "bad.aasx"
        with zipfile.ZipFile(p, "w") as zf:
            zf.writestr("env.xml", f'<environment xmlns="{V3_NAMESPACE}"><oops></environment>')
        with pytest.raises(SmtkitError) as ei:
            extract_package(p)
        assert ei.value.code == "XML_MALFORMED"


class TestDialect:
    def test_v3(self):
        assert detect_dialect(part(V3_NAMESPACE)).version is DialectVersion.V3

    def test_v2(self):
        assert detect_dialect(part(V2_NAMESPACE)).version is DialectVersion.V2

    def test_unknown(self):
        with pytest.raises(SmtkitError) as ei:
            detect_dialect(part("http://example.org/other"))
        assert ei.value.code == "UNKNOWN_DIALECT"


def element_with(qualifier_type: str, value: str, ns: str = V3_NAMESPACE) -> ET.Element:
    return ET.fromstring(
        f'<property xmlns="{ns}"><qualifiers><qualifier><type>{qualifier_type}</type>'
        f'<value>{value}</value></qualifier></qualifiers></property>')


class TestQualifier:
    def test_multiplicity_keyword(self):
        c = read_cardinality_qualifier(element_with("Multiplicity", "OneToMany"))
        assert (c.min, c.max) == (1, None)

    def test_cardinality_bracket(self):
        c = read_cardinality_qualifier(element_with("Cardinality", "[0..1]"))
        assert (c.min, c.max) == (0, 1)

    def test_namespaced_variant(self):
        c = read_cardinality_qualifier(element_with("SMT/Cardinality", "ZeroToMany"))
        assert (c.min, c.max) == (0, None)

    def test_absent(self):
        assert read_cardinality_qualifier(ET.fromstring(f'<property xmlns="{V3_NAMESPACE}"/>')) is None


def normalized(spec):
    return [(d.name, d.kind, [(r.name, r.kind, r.cardinality,
                               normalize_type(r.value_type_raw).kind if r.value_type_raw else None)
                              for r in d.rows]) for d in spec.defs]


class TestEnvironment:
    def test_v2_and_v3_symmetric(self):
        v2 = extract_package(FIXTURES / "02099-sample-v2.aasx")
        v3 = extract_package(FIXTURES / "02099-sample-v3.aasx")
        assert normalized(v2) == normalized(v3)
        assert (v2.dialect, v3.dialect) == ("V2", "V3")

    def test_nesting_has_parent_link(self):
        spec = extract_package(FIXTURES / "02099-sample-v3.aasx")
        address = spec.defs_named("Address")[0]
        assert address.parent == "SampleSubmodel"
        assert [r.name for r in address.rows] == ["Street", "ZipCode"]
        assert spec.defs_named("Subassembly")[0].kind is ElementKind.Entity

    def test_english_description_preferred(self):
        spec = extract_package(FIXTURES / "02099-sample-v2.aasx")
        row = spec.submodel_defs[0].rows[0]
        assert row.description == "Name of the manufacturer"

    def test_one_submodel_two_properties(self):
        ns = V2_NAMESPACE
        xml = f"""<aas:aasenv xmlns:aas="{ns}"><aas:submodels><aas:submodel>
          <aas:idShort>Tiny</aas:idShort>
          <aas:identification idType="IRI">https://example.org/tiny/1/0</aas:identification>
          <aas:submodelElements>
           <aas:submodelElement><aas:property><aas:idShort>A</aas:idShort>
             <aas:valueType>string</aas:valueType></aas:property></aas:submodelElement>
           <aas:submodelElement><aas:property><aas:idShort>B</aas:idShort>
             <aas:valueType>int</aas:valueType></aas:property></aas:submodelElement>
          </aas:submodelElements></aas:submodel></aas:submodels></aas:aasenv>"""
        spec = parse_environment(XmlPart("env.xml", xml.encode(), ns))
        assert len(spec.submodel_defs) == 1 and spec.row_count() == 2

    def test_instances_merged_into_counting_field(self):
        spec = extract_package(FIXTURES / "02097-instantiated.aasx")
        phone = spec.submodel_defs[0].rows[0]
        assert phone.name == "Phone" and phone.id_short.placeholder is Placeholder.COUNTING
        assert phone.instantiated
        assert "INSTANTIATED_MERGED" in [f.code for f in spec.findings]

    def test_no_silent_loss(self):
        # the operation element is not modeled and must surface as a finding
        spec = extract_package(FIXTURES / "02099-sample-v3.aasx")
        root = open_package(FIXTURES / "02099-sample-v3.aasx").xml_parts[0].root()
        id_shorts = {e.text for e in root.iter() if e.tag.endswith("}idShort")}
        seen = {d.name for d in spec.defs} | {r.name for _, r in spec.rows()}
        reported = {f"{f.location} {f.message}" for f in spec.findings}
        for name in id_shorts - seen:
            assert any(name in m for m in reported), name

    def test_versionless(self):
        spec = extract_package(FIXTURES / "02098-versionless.aasx")
        assert spec.version == ""
