"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line."""

from __future__ import annotations

import dataclasses
import json
import time

import pytest
from hypothesis import given, settings

from smtkit.analyze import RULES, diff_models, lint
from smtkit.codegen import (generate_accessor_api, generate_build_spec, generate_builder_api,
                            generate_sources, load_pack, render_manifest, run_manifest)
from smtkit.grid import normalize_type, parse_cardinality, parse_id_short_cell, parse_value_cell
from smtkit.model import ElementKind, Placeholder, ValueKind, parse_model, read_model, serialize_model
from smtkit.runtime import BuildError
from smtkit.transform import merge_fragments, split_or_idshorts

from conftest import FIXTURES, ORACLE, extract, read_tsv
from scan import classes, max_repetition, methods, unexercised_mandatory
from strategies import cardinalities

PACK = load_pack()


@pytest.mark.criterion("cardinality notations")
def test_cardinality_notations():
    started = time.perf_counter()
    cases = {
        # the four families seen in practice
        "1..*": (1, None), "[1..*]": (1, None), "1..n": (1, None), "*": (0, None),
        # bracketed, keyword and bare-integer forms
        "[0..1]": (0, 1), "[ 0 .. n ]": (0, None), "One": (1, 1), "ZeroToOne": (0, 1),
        "OneToMany": (1, None), "ZeroToMany": (0, None), "1": (1, 1), "2": (2, 2),
        "0..2": (0, 2), " 1 ..  * ": (1, None),
    }
    for text, expected in cases.items():
        c = parse_cardinality(text)
        assert (c.min, c.max) == expected, text

    @settings(max_examples=200, deadline=None, database=None)
    @given(cardinalities())
    def round_trip(c):
        assert parse_cardinality(c.render()) == c

    round_trip()
    assert time.perf_counter() - started < 1.0


@pytest.mark.criterion("placeholders")
def test_placeholders(pipeline, import_generated):
    expected = {
        "ContactInformation{00}": ("ContactInformation", Placeholder.COUNTING, None),
        "Marking{arbitrary}": ("Marking", Placeholder.ARBITRARY, None),
        "Document{variable}": ("Document", Placeholder.VARIABLE, None),
        "Channel{name of the channel}": ("Channel", Placeholder.FREE_TEXT, "name of the channel"),
    }
    for cell, (base, placeholder, text) in expected.items():
        spec, _ = parse_id_short_cell(cell)
        assert (spec.base, spec.placeholder, spec.placeholder_text) == (base, placeholder, text)
    assert parse_id_short_cell("prop{00}")[0].digits == 2

    registry, results = pipeline
    api, _ = generate_sources(results["02002-contact.grid.json"].model, PACK, registry.models)
    mod = import_generated(api, "idta_02002_1_0_builder")
    b = mod.ContactInformationsBuilder()
    b.create_contact_information(1)
    b.create_contact_information(2)
    assert [c.id_short for c in b._element.children] == \
        ["ContactInformation01", "ContactInformation02"]


@pytest.mark.criterion("example language and unit forms")
def test_example_forms():
    rows = read_tsv("value-cells.tsv")
    assert len(rows) == 20
    for case, kind, cell, raw_type, expected in rows:
        raw, examples = parse_value_cell(cell.replace("\\n", "\n"), ElementKind(kind))
        assert raw == (None if raw_type == "-" else raw_type), case
        assert [[e.text, e.language, e.unit] for e in examples] == json.loads(expected), case
    # the unmarked multi-language case keeps the language absent
    unmarked = [r for r in rows if r[0] == "L6"][0]
    _, (example,) = parse_value_cell(unmarked[2].replace("\\n", "\n"),
                                     ElementKind.MultiLanguageProperty)
    assert example.language is None


@pytest.mark.criterion("type tolerance")
def test_type_tolerance():
    rows = read_tsv("type-aliases.tsv")
    integer_spellings = {s for s, t in rows if t == "Integer"}
    assert len(rows) >= 20 and len(integer_spellings) >= 5
    failures = []
    for spelling, target in rows:
        findings = []
        vt = normalize_type(spelling, ElementKind.Property, findings)
        if vt.kind is not ValueKind(target) or findings:
            failures.append(spelling)
    assert failures == []
    findings = []
    assert normalize_type("Quaternion", ElementKind.Property, findings).kind is ValueKind.String
    assert [f.code for f in findings] == ["TYPE_FALLBACK"]


@pytest.mark.criterion("dialect symmetry")
def test_dialect_symmetry(pipeline):
    _, results = pipeline
    d = diff_models(results["02099-sample-v2.aasx"].model, results["02099-sample-v3.aasx"].model)
    assert d.per_field
    assert d.overlap(["idShort", "valueType", "semanticId"]) == 100.0


@pytest.mark.criterion("reuse mechanisms")
def test_reuse_mechanisms():
    orsplit = extract("02091-orsplit.grid.json")
    split = split_or_idshorts(orsplit)
    names = [r.name for r in split.defs[0].rows]
    assert names[:3] == ["Phone", "Fax", "Email"]
    assert split.row_count() == orsplit.row_count() + 2 + 1

    fragment = extract("02092-fragment.grid.json")
    frags = [d for d in fragment.defs if d.is_fragment]
    merged = merge_fragments(split_or_idshorts(fragment))
    frag_rows = [r.name for d in frags for r in d.rows]
    for target in ("Office", "Plant"):
        (d,) = merged.defs_named(target)
        assert [r.name for r in d.rows if r.from_fragment] == frag_rows
    assert not any(d.is_fragment for d in merged.defs)

    for spec in (orsplit, fragment):
        out = merge_fragments(split_or_idshorts(spec))
        fr = [d for d in spec.defs if d.is_fragment]
        or_extra = sum(r.id_short_cell.split("\n", 1)[0].count(" or ") for _, r in spec.rows())
        assert out.row_count() == (spec.row_count() - sum(len(d.rows) for d in fr)
                                   + sum(len(d.rows) * len(d.fragment_targets) for d in fr)
                                   + or_extra)


@pytest.mark.criterion("import resolution")
def test_import_resolution(pipeline):
    registry, results = pipeline
    contact = results["02002-contact.grid.json"].model
    nameplate = results["02006-nameplate.grid.json"].model
    assert [(i.spec_number, i.version) for i in nameplate.imports] == \
        [(contact.spec_number, contact.version)]
    assert sum(ln.startswith("import ") for ln in serialize_model(nameplate).splitlines()) == 1


def fixture_models(pipeline) -> dict:
    _, results = pipeline
    models = {name: res.model for name, res in results.items()}
    for path in (FIXTURES / "02093-enums.smtm", ORACLE / "overlap-a.smtm", ORACLE / "overlap-b.smtm"):
        models[path.name] = read_model(path)
    return models


@pytest.mark.criterion("model round trip")
def test_model_round_trip(pipeline):
    for name, m in fixture_models(pipeline).items():
        texts = {serialize_model(m) for _ in range(3)}
        assert len(texts) == 1, name
        assert parse_model(texts.pop()) == m, name


@pytest.mark.criterion("codegen structure")
def test_codegen_structure(pipeline, tmp_path):
    registry, results = pipeline
    for name, res in results.items():
        model = res.model
        builders = classes(generate_builder_api(model, PACK).files[0].text)
        accessors = classes(generate_accessor_api(model, PACK).files[0].text)
        records = list(model.records())
        assert len(builders) == len(records), name
        for rec in records:
            assert len(methods(builders[f"{rec.name}Builder"], ("set_", "create_"))) == \
                len(rec.fields)
            assert len(methods(accessors[f"{rec.name}Accessor"], ("get_",))) >= len(rec.fields)
        _, tests = generate_sources(model, PACK, registry.models)
        scope = [model, *registry.models.values()]
        assert unexercised_mandatory(tests.files[0].text, scope) == [], name
        assert max_repetition(tests.files[0].text, scope) <= 2, name

    large = results["02021-large.grid.json"].model
    n_types = sum(1 for _ in large.records())
    n_fields = sum(len(r.fields) for r in large.records())
    assert n_types >= 25 and n_fields >= 180
    started = time.perf_counter()
    api, tests = generate_sources(large, PACK, registry.models)
    manifest = generate_build_spec([api, tests])
    (api + tests).write(tmp_path)
    render_manifest(manifest, PACK)
    steps = run_manifest(tmp_path, manifest)
    elapsed = time.perf_counter() - started
    assert [(s.name, s.ok) for s in steps] == \
        [("compile", True), ("test", True), ("package", True)], steps[-1].output
    assert elapsed < 60


@pytest.mark.criterion("builder validation")
def test_builder_validation(import_generated):
    api, _ = generate_sources(read_model(FIXTURES / "02093-enums.smtm"), PACK)
    mod = import_generated(api, "idta_02093_1_0_builder")
    with pytest.raises(BuildError):
        mod.ValveBuilder().set_serial_number("V1").build()
    with pytest.raises(BuildError):
        mod.ValveBuilder().set_mode("turbo")
    element = mod.ValveBuilder().set_serial_number("V1").set_mode("manual") \
        .set_medium("oil").build()
    assert element.child("Medium").value == "oil"


TRIGGERS = {code: f"lint-{code.lower().replace('_', '-')}.grid.json" for code in RULES}
TRIGGERS["INSTANTIATED_IN_TEMPLATE"] = "02097-instantiated.aasx"


@pytest.mark.criterion("lint catalog")
def test_lint_catalog():
    assert len(RULES) == 10
    for code, fixture in TRIGGERS.items():
        assert code in {f.code for f in lint(extract(fixture))}, code
    assert lint(extract("02080-clean.grid.json")) == []
    assert "MISSING_SPEC_VERSION" in {f.code for f in lint(extract("02098-versionless.aasx"))}


@pytest.mark.criterion("overlap oracle")
def test_overlap_oracle():
    a, b = read_model(ORACLE / "overlap-a.smtm"), read_model(ORACLE / "overlap-b.smtm")
    expected = float(read_tsv("overlap-oracle.tsv")[-1][1])
    assert abs(diff_models(a, b).overlap_percent - expected) <= 0.1
    assert diff_models(a, a).overlap_percent == 100.0
    disjoint = dataclasses.replace(b, submodels=tuple(
        dataclasses.replace(r, name=f"{r.name}Elsewhere") for r in b.submodels))
    assert diff_models(a, disjoint).overlap_percent == 0.0
