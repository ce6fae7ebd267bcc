"""Regenerate the committed fixture corpus.

Run from the repository root: ``python3 tests/fixtures/make_fixtures.py``.
Outputs are deterministic so the committed files only change when this
script does.
"""

from __future__ import annotations

import json
import zipfile
from pathlib import Path
from xml.sax.saxutils import escape

HERE = Path(__file__).resolve().parent

FOUR_HEADER = ["idShort", "semanticId/Description", "valueType/Example", "card."]
TWO_ROW_HEADER = [["idShort", "semanticId", "valueType", "card."], ["", "Description", "Example", ""]]


def cell(text, size=None):
    return {"text": text} if size is None else {"text": text, "font_size": size}


def rows_of(*blocks):
    """Concatenate table blocks with a blank row between them."""
    rows = []
    for i, block in enumerate(blocks):
        if i:
            rows.append([])
        for r in block:
            rows.append([c if isinstance(c, dict) else cell(c) for c in r])
    return rows


def doc_table(number, title, version=None):
    rows = [["Specification", f"IDTA {number}"], ["Title", title]]
    if version is not None:
        rows.insert(1, ["Version", version])
    return rows


def header(name, cls="SMC", sem=None, desc=None, parent=None, extra=()):
    rows = [["idShort", name], ["Class", cls]]
    if sem:
        rows.append(["semanticId", sem])
    if parent:
        rows.append(["Parent", parent])
    if desc:
        rows.append(["Explanation", desc])
    rows.extend(extra)
    return rows


def fields(*rows, two_row=False):
    return ([*TWO_ROW_HEADER] if two_row else [FOUR_HEADER]) + [list(r) for r in rows]


def write_grid(name, *blocks):
    data = {"sheets": [{"name": "Tables", "rows": rows_of(*blocks)}]}
    (HERE / name).write_text(json.dumps(data, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


# ---------------------------------------------------------------- grid fixtures

CONTACT_SEM = "https://admin-shell.io/zvei/nameplate/1/0/ContactInformations"
CONTACT_TYPE_SEM = "https://admin-shell.io/zvei/nameplate/1/0/ContactInformations/ContactInformation"
PHONE_SEM = "https://admin-shell.io/zvei/nameplate/1/0/ContactInformations/ContactInformation/Phone"


def contact():
    write_grid(
        "02002-contact.grid.json",
        doc_table("02002", "Contact Information", "1.0"),
        header("ContactInformations", "Submodel", CONTACT_SEM,
               "Collection of contact information entries"),
        fields(
            ["[SMC] ContactInformation{00}", f"{CONTACT_TYPE_SEM}\nOne contact of the asset", "",
             "0..*"],
            [cell("1) Footnotes of the document are set in small print", 6), cell("", 6),
             cell("", 6), cell("", 6)],
        ),
        header("ContactInformation", "SMC", CONTACT_TYPE_SEM, "Contact of a person or company",
               parent="ContactInformations"),
        fields(
            ["RoleOfContactPerson", "0173-1#02-AAO204#003\nFunction of the person in the company",
             "String\n0173-1#07-AAS931#001", "0..1"],
            ["[MLP] NationalCode", "0173-1#02-AAO134#002\nCode of a country", "LangString\nDE@en",
             "0..1"],
            ["[MLP] CityTown", "0173-1#02-AAO132#002\nTown or city", "LangString\nMünchen@de", "0..1"],
            ["[MLP] Street", "0173-1#02-AAO128#002\nStreet name and house number",
             "LangString\nMusterstraße 1@de", "0..1"],
            ["[SMC] Phone", f"{PHONE_SEM}\nPhone number including type", "", "0..1"],
        ),
        header("Phone", "SMC", PHONE_SEM, "Phone number", parent="ContactInformation"),
        fields(
            ["[MLP] TelephoneNumber", "0173-1#02-AAO136#002\nComplete telephone number",
             "LangString\n+49 123 456@en", "1"],
            ["TypeOfTelephone", "0173-1#02-AAO137#003\nCharacterization of the telephone",
             "String\n0173-1#07-AAS754#001", "0..1"],
        ),
    )


def nameplate():
    write_grid(
        "02006-nameplate.grid.json",
        doc_table("02006", "Digital Nameplate for Industrial Equipment", "2.0"),
        header("Nameplate", "Submodel", "https://admin-shell.io/zvei/nameplate/2/0/Nameplate",
               "Contains the nameplate information attached to the product"),
        fields(
            ["URIOfTheProduct", "0173-1#02-AAY811#001\nUnique global identification of the product",
             "String\nhttps://www.domain-abc.com/Model-Nr-1234", "1"],
            ["[MLP] ManufacturerName", "0173-1#02-AAO677#002 Legally valid designation of the "
             "natural or judicial person", "LangString\nMuster AG@de", "1"],
            ["SerialNumber", "0173-1#02-AAM556#002\nUnique combination of numbers and letters",
             "String\n12345678", "0..1"],
            ["", "used to identify the device once it has been manufactured", "", ""],
            ["YearOfConstruction", "0173-1#02-AAP906#001\nYear as completion date",
             "String\n2022", "1"],
            ["[SMC] ContactInformation", f"{CONTACT_TYPE_SEM}\nContact information of the "
             "manufacturer", "", "0..1"],
            ["[SMC] Markings", "https://admin-shell.io/zvei/nameplate/2/0/Nameplate/\nMarkings\n"
             "Collection of product markings", "", "0..1"],
        ),
        header("ContactInformation", "SMC", CONTACT_TYPE_SEM, "Local copy of the contact table",
               parent="Nameplate"),
        fields(
            ["[MLP] Street", "0173-1#02-AAO128#002\nStreet name", "LangString\nMain Street@en",
             "0..1"],
        ),
        header("Markings", "SMC", "https://admin-shell.io/zvei/nameplate/2/0/Nameplate/Markings",
               "Collection of product markings", parent="Nameplate"),
        fields(
            ["[SMC] Marking{00}", "https://admin-shell.io/zvei/nameplate/2/0/Nameplate/Markings/"
             "Marking\nContains information about the marking", "", "1..*"],
        ),
        header("Marking", "SMC",
               "https://admin-shell.io/zvei/nameplate/2/0/Nameplate/Markings/Marking",
               "A marking on the product", parent="Markings"),
        fields(
            ["MarkingName", "https://admin-shell.io/zvei/nameplate/2/0/Nameplate/Markings/Marking/"
             "MarkingName\nCommon name of the marking", "String\nCE", "1"],
            ["MarkingFile", "https://admin-shell.io/zvei/nameplate/2/0/Nameplate/Markings/Marking/"
             "MarkingFile\nPicture of the marking", "File\n/aasx/Nameplate/marking_ce.png", "1"],
        ),
    )


CLEAN_SM = "https://example.org/idta/02080/1/0/CleanSubmodel"


def clean_blocks(version="1.0", rows=None, extra_blocks=()):
    base_rows = rows if rows is not None else [
        ["ProductName", f"{CLEAN_SM}/ProductName\nName of the product", "String\nSensor X", "1"],
        ["[MLP] ProductLabel", f"{CLEAN_SM}/ProductLabel\nLabel of the product",
         "LangString\nFast sensor@en", "0..1"],
        ["Weight", f"{CLEAN_SM}/Weight\nWeight of the product", "Double\n5.2 [kg]", "0..1"],
        ["Port{00}", f"{CLEAN_SM}/Port\nCommunication port", "Integer\n8080", "0..*"],
        ["[SMC] Address", f"{CLEAN_SM}/Address\nPostal address", "", "0..1"],
    ]
    blocks = [doc_table("02080", "Clean Submodel", version)] if version else \
        [[["Specification", "IDTA 02080"], ["Title", "Clean Submodel"]]]
    blocks += [
        header("CleanSubmodel", "Submodel", CLEAN_SM, "A submodel without specification issues"),
        fields(*base_rows),
        header("Address", "SMC", f"{CLEAN_SM}/Address", "Postal address", parent="CleanSubmodel"),
        fields(
            ["Street", f"{CLEAN_SM}/Address/Street\nStreet and number", "String\nMain St 1", "1"],
            ["ZipCode", f"{CLEAN_SM}/Address/ZipCode\nPostal code", "String\n12345", "1"],
        ),
        *extra_blocks,
    ]
    return blocks


def clean_and_triggers():
    write_grid("02080-clean.grid.json", *clean_blocks())
    write_grid("lint-missing-spec-version.grid.json", *clean_blocks(version=None))

    def variant(name, replace_index, new_row):
        rows = [
            ["ProductName", f"{CLEAN_SM}/ProductName\nName of the product", "String\nSensor X", "1"],
            ["[MLP] ProductLabel", f"{CLEAN_SM}/ProductLabel\nLabel of the product",
             "LangString\nFast sensor@en", "0..1"],
            ["Weight", f"{CLEAN_SM}/Weight\nWeight of the product", "Double\n5.2 [kg]", "0..1"],
            ["Port{00}", f"{CLEAN_SM}/Port\nCommunication port", "Integer\n8080", "0..*"],
            ["[SMC] Address", f"{CLEAN_SM}/Address\nPostal address", "", "0..1"],
        ]
        rows[replace_index] = new_row
        write_grid(name, *clean_blocks(rows=rows))

    variant("lint-missing-cardinality.grid.json", 0,
            ["ProductName", f"{CLEAN_SM}/ProductName\nName of the product", "String\nSensor X", ""])
    variant("lint-missing-value-type.grid.json", 0,
            ["ProductName", f"{CLEAN_SM}/ProductName\nName of the product", "", "1"])
    variant("lint-missing-semanticid.grid.json", 0,
            ["ProductName", "Name of the product", "String\nSensor X", "1"])
    # mixes "1..n" and "1..*"
    write_grid("lint-mixed-cardinality-notation.grid.json", *clean_blocks(rows=[
        ["ProductName", f"{CLEAN_SM}/ProductName\nName of the product", "String\nSensor X", "1"],
        ["Port{00}", f"{CLEAN_SM}/Port\nCommunication port", "Integer\n8080", "1..n"],
        ["Slot{00}", f"{CLEAN_SM}/Slot\nMounting slot", "Integer\n2", "1..*"],
        ["[SMC] Address", f"{CLEAN_SM}/Address\nPostal address", "", "0..1"],
    ]))
    variant("lint-type-fallback.grid.json", 2,
            ["Weight", f"{CLEAN_SM}/Weight\nWeight of the product", "Quaternion\n1", "0..1"])
    variant("lint-illegal-idshort.grid.json", 0,
            ["Product-Name", f"{CLEAN_SM}/ProductName\nName of the product", "String\nSensor X", "1"])
    variant("lint-unseparated-cell-content.grid.json", 0,
            ["ProductName", f"{CLEAN_SM}/ProductName Name of the product", "String\nSensor X", "1"])
    variant("lint-note-without-flag.grid.json", 0,
            ["ProductName", f"{CLEAN_SM}/ProductName\nName of the product\nNote: the name is "
             "printed on the housing", "String\nSensor X", "1"])


def recursive():
    sm = "https://example.org/idta/02090/1/0/BillOfMaterial"
    write_grid(
        "02090-recursive.grid.json",
        doc_table("02090", "Bill of Material", "1.0"),
        header("BillOfMaterial", "Submodel", sm, "Hierarchical structure of parts"),
        fields(
            ["Name", f"{sm}/Name\nName of the structure", "String\nPump", "1"],
            ["[SMC] Node", f"{sm}/Node\nRoot node", "", "1"],
        ),
        header("Node", "SMC", f"{sm}/Node", "A node of the hierarchy", parent="BillOfMaterial"),
        fields(
            ["NodeName", f"{sm}/Node/NodeName\nName of the node", "String\nHousing", "1"],
            ["[SMC] Node{00}", f"{sm}/Node\nChild nodes (direct recursion)", "", "0..*"],
            ["[SMC] Part", f"{sm}/Part\nPart realized by the node", "", "0..1"],
        ),
        header("Part", "SMC", f"{sm}/Part", "A part of the hierarchy", parent="Node"),
        fields(
            ["PartNumber", f"{sm}/Part/PartNumber\nNumber of the part", "String\nP-1", "1"],
            ["[SMC] Node", f"{sm}/Node\nSub-structure (indirect recursion)", "", "0..1"],
        ),
    )


def or_split():
    sm = "https://example.org/idta/02091/1/0/Communication"
    write_grid(
        "02091-orsplit.grid.json",
        doc_table("02091", "Communication Channels", "1.0"),
        header("Communication", "Submodel", sm, "Ways to reach the operator"),
        fields(
            ["Phone or Fax or Email", f"{sm}/Channel\nContact channel", "String\n+49 1", "0..1"],
            ["Street or PostBox", f"{sm}/Street\n{sm}/PostBox\nPostal address line",
             "String\nMain St", "0..1"],
            ["Website", f"{sm}/Website\nHome page", "AnyURI\nhttps://example.org", "0..1"],
        ),
    )


def fragment():
    sm = "https://example.org/idta/02092/1/0/Locations"
    write_grid(
        "02092-fragment.grid.json",
        doc_table("02092", "Locations", "1.0"),
        header("Locations", "Submodel", sm, "Sites of a company"),
        fields(
            ["[SMC] Office", f"{sm}/Office\nAn office", "", "0..1"],
            ["[SMC] Plant", f"{sm}/Plant\nA plant", "", "0..1"],
        ),
        header("Office", "SMC", f"{sm}/Office", "An office", parent="Locations"),
        fields(["RoomCount", f"{sm}/Office/RoomCount\nNumber of rooms", "Integer\n12", "0..1"]),
        header("Plant", "SMC", f"{sm}/Plant", "A plant", parent="Locations"),
        fields(["Capacity", f"{sm}/Plant/Capacity\nProduction capacity", "Double\n3.5", "0..1"]),
        header("AddressFragment", "SMC", f"{sm}/AddressFragment", "Shared address fields",
               extra=[["Note", "applies to: Office, Plant"]]),
        fields(
            ["Street", f"{sm}/Street\nStreet", "String\nMain St 1", "1"],
            ["City", f"{sm}/City\nCity", "String\nBerlin", "1"],
        ),
    )


def large():
    """About 30 types and 200 fields, one submodel fanning out through nested collections."""
    sm = "https://example.org/idta/02021/1/0/LargeSubmodel"
    types = [f"Group{i:02d}" for i in range(1, 30)]
    kinds = [("String", "text"), ("Integer", "7"), ("Double", "2.5 [m]"), ("Boolean", "true"),
             ("Date", "2024-01-31"), ("LangString", "hello@en")]
    blocks = [doc_table("02021", "Large Submodel", "1.0"),
              header("LargeSubmodel", "Submodel", sm, "A large generated submodel")]
    top = [[f"Info{j}", f"{sm}/Info{j}\nInformation {j}", "String\nx", "1"] for j in range(1, 4)]
    top += [[f"[SMC] {t}", f"{sm}/{t}\nGroup {t}", "", "0..1" if n % 2 else "1"]
            for n, t in enumerate(types[:5])]
    blocks.append(fields(*top))
    for n, t in enumerate(types):
        parent = "LargeSubmodel" if n < 5 else types[(n - 5) // 5]
        blocks.append(header(t, "SMC", f"{sm}/{t}", f"Group {t}", parent=parent))
        rows = []
        for j in range(6):
            vt, ex = kinds[(n + j) % len(kinds)]
            name = f"{t}Item{j + 1}"
            prefix = "[MLP] " if vt == "LangString" else ""
            card = ["1", "0..1", "0..*", "1..*"][(n + j) % 4]
            if card in ("0..*", "1..*") and vt != "LangString":
                name += "{00}"
            rows.append([f"{prefix}{name}", f"{sm}/{t}/Item{j + 1}\nItem {j + 1} of {t}",
                         f"{vt}\n{ex}", card])
        children = [c for k, c in enumerate(types) if 5 <= k and (k - 5) // 5 == n]
        for c in children:
            rows.append([f"[SMC] {c}", f"{sm}/{c}\nGroup {c}", "", "0..1"])
        blocks.append(fields(*rows))
    write_grid("02021-large.grid.json", *blocks)


# ---------------------------------------------------------------- AASX fixtures

V2_NS = "http://www.admin-shell.io/aas/2/0"
V3_NS = "https://admin-shell.io/aas/3/0"
IEC_NS = "http://www.admin-shell.io/IEC61360/2/0"

SAMPLE_SM = "https://example.org/idta/02099/1/0/SampleSubmodel"
SAMPLE = {
    "idShort": "SampleSubmodel", "semanticId": SAMPLE_SM,
    "description": {"en": "Sample submodel for both dialects", "de": "Beispiel"},
    "version": ("1", "0"),
    "elements": [
        {"kind": "property", "idShort": "ManufacturerName", "semanticId": "0173-1#02-AAO677#002",
         "valueType": ("string", "xs:string"), "value": "ACME",
         "description": {"de": "Herstellername", "en": "Name of the manufacturer"},
         "card": ("Multiplicity", "One", "Cardinality", "One")},
        {"kind": "multiLanguageProperty", "idShort": "ProductDesignation",
         "semanticId": "0173-1#02-AAW338#001", "langValue": {"en": "Pressure sensor"},
         "card": ("Multiplicity", "ZeroToOne", "Cardinality", "[0..1]")},
        {"kind": "property", "idShort": "SerialNumber", "semanticId": "0173-1#02-AAM556#002",
         "valueType": ("int", "xs:int"), "value": "4711",
         "description": {"en": "Serial number"},
         "card": ("Multiplicity", "ZeroToOne", "Cardinality", "ZeroToOne")},
        {"kind": "submodelElementCollection", "idShort": "Address",
         "semanticId": f"{SAMPLE_SM}/Address", "description": {"en": "Postal address"},
         "card": ("Multiplicity", "ZeroToMany", "Cardinality", "0..*"),
         "children": [
             {"kind": "property", "idShort": "Street", "semanticId": f"{SAMPLE_SM}/Address/Street",
              "valueType": ("string", "xs:string"), "description": {"en": "Street"},
              "card": ("Multiplicity", "One", "Cardinality", "One")},
             {"kind": "property", "idShort": "ZipCode", "semanticId": f"{SAMPLE_SM}/Address/Zip",
              "valueType": ("string", "xs:string"), "value": "12345",
              "card": ("Multiplicity", "One", "Cardinality", "1")},
         ]},
        {"kind": "entity", "idShort": "Subassembly", "semanticId": f"{SAMPLE_SM}/Subassembly",
         "description": {"en": "A contained subassembly"},
         "card": ("Multiplicity", "ZeroToOne", "Cardinality", "ZeroToOne"),
         "children": [
             {"kind": "property", "idShort": "PartNumber",
              "semanticId": f"{SAMPLE_SM}/Subassembly/PartNumber",
              "valueType": ("string", "xs:string"), "description": {"en": "Part number"},
              "card": ("Multiplicity", "One", "Cardinality", "One")},
         ]},
        {"kind": "file", "idShort": "Manual", "semanticId": f"{SAMPLE_SM}/Manual",
         "description": {"en": "Operating manual"},
         "card": ("Multiplicity", "ZeroToOne", "Cardinality", "ZeroToOne")},
        {"kind": "operation", "idShort": "Reset", "semanticId": f"{SAMPLE_SM}/Reset",
         "description": {"en": "Resets the device"}},
    ],
    "concepts": {"0173-1#02-AAW338#001": ("Product designation",
                                          "Short description of the product")},
}


def _v2_lang(items, tag="aas:langString"):
    return "".join(f'<{tag} lang="{escape(k)}">{escape(v)}</{tag}>' for k, v in items.items())


def _v2_ref(value, key_type="GlobalReference"):
    id_type = "IRI" if "://" in value else "IRDI"
    return (f'<aas:keys><aas:key type="{key_type}" local="true" idType="{id_type}">'
            f"{escape(value)}</aas:key></aas:keys>")


def _v2_element(e):
    kind = e["kind"]
    parts = [f"<aas:idShort>{escape(e['idShort'])}</aas:idShort>",
             "<aas:category>PARAMETER</aas:category>" if kind == "property" else ""]
    if e.get("description"):
        parts.append(f"<aas:description>{_v2_lang(e['description'])}</aas:description>")
    key_type = "ConceptDescription" if e["semanticId"] in SAMPLE["concepts"] else "GlobalReference"
    parts.append(f"<aas:kind>Template</aas:kind><aas:semanticId>{_v2_ref(e['semanticId'], key_type)}"
                 "</aas:semanticId>")
    if e.get("card"):
        qt, qv = e["card"][0], e["card"][1]
        parts.append("<aas:qualifier><aas:qualifiers><aas:type>" + qt + "</aas:type>"
                     "<aas:valueType>string</aas:valueType><aas:value>" + qv +
                     "</aas:value></aas:qualifiers></aas:qualifier>")
    if kind == "property":
        parts.append(f"<aas:valueType>{e['valueType'][0]}</aas:valueType>")
        parts.append(f"<aas:value>{escape(e.get('value', ''))}</aas:value>")
    elif kind == "multiLanguageProperty":
        parts.append(f"<aas:value>{_v2_lang(e.get('langValue', {}))}</aas:value>")
    elif kind == "file":
        parts.append("<aas:mimeType>application/pdf</aas:mimeType><aas:value></aas:value>")
    elif kind == "submodelElementCollection":
        inner = "".join(_v2_element(c) for c in e["children"])
        parts.append(f"<aas:value>{inner}</aas:value><aas:ordered>false</aas:ordered>"
                     "<aas:allowDuplicates>false</aas:allowDuplicates>")
    elif kind == "entity":
        inner = "".join(_v2_element(c) for c in e["children"])
        parts.append(f"<aas:statements>{inner}</aas:statements>"
                     "<aas:entityType>CoManagedEntity</aas:entityType>")
    body = "".join(parts)
    return f"<aas:submodelElement><aas:{kind}>{body}</aas:{kind}></aas:submodelElement>"


def v2_environment(sm):
    admin = ""
    if sm.get("version"):
        admin = (f"<aas:administration><aas:version>{sm['version'][0]}</aas:version>"
                 f"<aas:revision>{sm['version'][1]}</aas:revision></aas:administration>")
    elements = "".join(_v2_element(e) for e in sm["elements"])
    concepts = "".join(
        "<aas:conceptDescription>"
        f'<aas:identification idType="IRDI">{escape(k)}</aas:identification>'
        "<aas:embeddedDataSpecification><aas:dataSpecificationContent>"
        "<aas:dataSpecificationIEC61360>"
        f'<IEC61360:preferredName><IEC61360:langString lang="EN">{escape(p)}'
        "</IEC61360:langString></IEC61360:preferredName>"
        f'<IEC61360:definition><IEC61360:langString lang="EN">{escape(d)}'
        "</IEC61360:langString></IEC61360:definition>"
        "</aas:dataSpecificationIEC61360></aas:dataSpecificationContent>"
        "</aas:embeddedDataSpecification></aas:conceptDescription>"
        for k, (p, d) in sm.get("concepts", {}).items())
    return (
        '<?xml version="1.0" encoding="utf-8"?>\n'
        f'<aas:aasenv xmlns:aas="{V2_NS}" xmlns:IEC61360="{IEC_NS}">'
        "<aas:assetAdministrationShells/><aas:assets/>"
        f"<aas:submodels><aas:submodel><aas:idShort>{sm['idShort']}</aas:idShort>"
        f"<aas:description>{_v2_lang(sm.get('description', {}))}</aas:description>"
        f'<aas:identification idType="IRI">{escape(sm["semanticId"])}</aas:identification>'
        f"{admin}<aas:kind>{sm.get('kind', 'Template')}</aas:kind>"
        f"<aas:semanticId>{_v2_ref(sm['semanticId'], 'Submodel')}</aas:semanticId>"
        f"<aas:submodelElements>{elements}</aas:submodelElements>"
        "</aas:submodel></aas:submodels>"
        f"<aas:conceptDescriptions>{concepts}</aas:conceptDescriptions></aas:aasenv>\n")


def _v3_lang(items, tag="langStringTextType"):
    return "".join(f"<{tag}><language>{escape(k)}</language><text>{escape(v)}</text></{tag}>"
                   for k, v in items.items())


def _v3_ref(value, key_type="GlobalReference"):
    return (f"<type>ExternalReference</type><keys><key><type>{key_type}</type>"
            f"<value>{escape(value)}</value></key></keys>")


def _v3_element(e):
    kind = e["kind"]
    parts = [f"<idShort>{escape(e['idShort'])}</idShort>"]
    if e.get("description"):
        parts.append(f"<description>{_v3_lang(e['description'])}</description>")
    parts.append(f"<semanticId>{_v3_ref(e['semanticId'])}</semanticId>")
    if e.get("card"):
        qt, qv = e["card"][2], e["card"][3]
        parts.append(f"<qualifiers><qualifier><kind>TemplateQualifier</kind><type>{qt}</type>"
                     f"<valueType>xs:string</valueType><value>{escape(qv)}</value>"
                     "</qualifier></qualifiers>")
    if kind == "property":
        parts.append(f"<valueType>{e['valueType'][1]}</valueType>")
        if e.get("value"):
            parts.append(f"<value>{escape(e['value'])}</value>")
    elif kind == "multiLanguageProperty":
        parts.append(f"<value>{_v3_lang(e.get('langValue', {}))}</value>")
    elif kind == "file":
        parts.append("<contentType>application/pdf</contentType>")
    elif kind == "submodelElementCollection":
        parts.append(f"<value>{''.join(_v3_element(c) for c in e['children'])}</value>")
    elif kind == "entity":
        parts.append(f"<statements>{''.join(_v3_element(c) for c in e['children'])}</statements>"
                     "<entityType>CoManagedEntity</entityType>")
    return f"<{kind}>{''.join(parts)}</{kind}>"


def v3_environment(sm):
    admin = ""
    if sm.get("version"):
        admin = (f"<administration><version>{sm['version'][0]}</version>"
                 f"<revision>{sm['version'][1]}</revision></administration>")
    elements = "".join(_v3_element(e) for e in sm["elements"])
    concepts = "".join(
        f"<conceptDescription><id>{escape(k)}</id><embeddedDataSpecifications>"
        "<embeddedDataSpecification><dataSpecification><type>ExternalReference</type><keys><key>"
        "<type>GlobalReference</type><value>https://admin-shell.io/DataSpecificationTemplates/"
        "DataSpecificationIEC61360/3/0</value></key></keys></dataSpecification>"
        "<dataSpecificationContent><dataSpecificationIec61360><preferredName>"
        f"<langStringPreferredNameTypeIec61360><language>en</language><text>{escape(p)}</text>"
        "</langStringPreferredNameTypeIec61360></preferredName><definition>"
        f"<langStringDefinitionTypeIec61360><language>en</language><text>{escape(d)}</text>"
        "</langStringDefinitionTypeIec61360></definition></dataSpecificationIec61360>"
        "</dataSpecificationContent></embeddedDataSpecification></embeddedDataSpecifications>"
        "</conceptDescription>"
        for k, (p, d) in sm.get("concepts", {}).items())
    return (
        '<?xml version="1.0" encoding="utf-8"?>\n'
        f'<environment xmlns="{V3_NS}"><submodels><submodel>'
        f"<idShort>{sm['idShort']}</idShort>"
        f"<description>{_v3_lang(sm.get('description', {}))}</description>"
        f"{admin}<id>{escape(sm['semanticId'])}</id><kind>{sm.get('kind', 'Template')}</kind>"
        f"<semanticId>{_v3_ref(sm['semanticId'], 'Submodel')}</semanticId>"
        f"<submodelElements>{elements}</submodelElements></submodel></submodels>"
        f"<conceptDescriptions>{concepts}</conceptDescriptions></environment>\n")


CONTENT_TYPES = ('<?xml version="1.0" encoding="utf-8"?>\n<Types xmlns="http://schemas.openxmlformats'
                 '.org/package/2006/content-types"><Default Extension="rels" ContentType="application'
                 '/vnd.openxmlformats-package.relationships+xml"/><Default Extension="xml" '
                 'ContentType="text/xml"/><Default Extension="png" ContentType="image/png"/></Types>\n')


def _rels(target, rel_type):
    return ('<?xml version="1.0" encoding="utf-8"?>\n<Relationships xmlns="http://schemas.'
            'openxmlformats.org/package/2006/relationships"><Relationship Type="' + rel_type +
            '" Target="' + target + '" Id="R1"/></Relationships>\n')


ORIGIN = "http://www.admin-shell.io/aasx/relationships/aasx-origin"
SPEC_REL = "http://www.admin-shell.io/aasx/relationships/aas-spec"


def write_aasx(name, env_xml, env_path="aasx/data/environment.aas.xml", spec_target=None,
               extra_parts=()):
    path = HERE / name
    # fixed timestamps keep the archive bytes stable
    with zipfile.ZipFile(path, "w", zipfile.ZIP_DEFLATED) as zf:
        def put(n, data):
            info = zipfile.ZipInfo(n, date_time=(2024, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            zf.writestr(info, data)
        put("[Content_Types].xml", CONTENT_TYPES)
        put("_rels/.rels", _rels("/aasx/aasx-origin", ORIGIN))
        put("aasx/aasx-origin", "")
        put("aasx/_rels/aasx-origin.rels", _rels(spec_target or "/" + env_path, SPEC_REL))
        if env_xml is not None:
            put(env_path, env_xml)
        for n, data in extra_parts:
            put(n, data)


PNG_BYTES = bytes.fromhex("89504e470d0a1a0a0000000d4948445200000001000000010806000000"
                          "1f15c4890000000a49444154789c6300010000050001")


def aasx():
    write_aasx("02099-sample-v2.aasx", v2_environment(SAMPLE))
    write_aasx("02099-sample-v3.aasx", v3_environment(SAMPLE))

    versionless = dict(SAMPLE, version=None,
                       semanticId="https://example.org/idta/versionless/SampleSubmodel")
    write_aasx("02098-versionless.aasx", v3_environment(versionless))

    phone = lambda n, num: {
        "kind": "submodelElementCollection", "idShort": f"Phone{n:02d}",
        "semanticId": "https://example.org/idta/02097/1/0/Contacts/Phone",
        "description": {"en": "A telephone"},
        "children": [{"kind": "property", "idShort": "TelephoneNumber",
                      "semanticId": "https://example.org/idta/02097/1/0/Contacts/Phone/Number",
                      "valueType": ("string", "xs:string"), "value": num,
                      "description": {"en": "Number"},
                      "card": ("Multiplicity", "One", "Cardinality", "One")}]}
    instantiated = {
        "idShort": "Contacts", "semanticId": "https://example.org/idta/02097/1/0/Contacts",
        "description": {"en": "Contacts with filled example instances"}, "version": ("1", "0"),
        "kind": "Instance",
        "elements": [phone(1, "+49 111"), phone(2, "+49 222"),
                     {"kind": "property", "idShort": "CompanyName",
                      "semanticId": "https://example.org/idta/02097/1/0/Contacts/CompanyName",
                      "valueType": ("string", "xs:string"), "value": "ACME",
                      "description": {"en": "Company"},
                      "card": ("Multiplicity", "One", "Cardinality", "One")}],
    }
    write_aasx("02097-instantiated.aasx", v3_environment(instantiated))

    write_aasx("02096-manifest-missing.aasx", v3_environment(SAMPLE),
               env_path="aasx/elsewhere/scanned.aas.xml",
               spec_target="/aasx/data/does-not-exist.aas.xml")

    path = HERE / "images-only.aasx"
    with zipfile.ZipFile(path, "w") as zf:
        info = zipfile.ZipInfo("aasx/images/logo.png", date_time=(2024, 1, 1, 0, 0, 0))
        zf.writestr(info, PNG_BYTES)


# ---------------------------------------------------------------- tabulated oracles

def main():
    contact()
    nameplate()
    clean_and_triggers()
    recursive()
    or_split()
    fragment()
    large()
    aasx()


if __name__ == "__main__":
    main()
