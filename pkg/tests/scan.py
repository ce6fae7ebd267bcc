"""Static scans over generated source text."""

from __future__ import annotations

import re
from typing import Iterable

from smtkit.codegen import method_names
from smtkit.model import Model, RecordType

_CLASS_RE = re.compile(r"^class (\w+)\b.*?:\n", re.M)
_ROOT_RE = re.compile(r"^\s*(b\d+) = (\w+)Builder\(\)", re.M)
_CREATE_RE = re.compile(r"^\s*(b\d+) = (b\d+)\.(\w+)\(", re.M)
_CALL_RE = re.compile(r"^\s*(?:\w+ = )?(b\d+)\.(\w+)\(", re.M)


def classes(text: str) -> dict[str, str]:
    """Class name to class body for every top-level class."""
    marks = list(_CLASS_RE.finditer(text))
    out = {}
    for i, m in enumerate(marks):
        end = marks[i + 1].start() if i + 1 < len(marks) else len(text)
        out[m.group(1)] = text[m.end():end]
    return out


def methods(body: str, prefixes: Iterable[str]) -> list[str]:
    pat = "|".join(re.escape(p) for p in prefixes)
    return re.findall(rf"^    def ((?:{pat})\w*)\(", body, re.M)


def _records(models: Iterable[Model]) -> dict[str, RecordType]:
    return {r.name: r for m in models for r in m.records()}


def builder_records(test_text: str, models: Iterable[Model]) -> dict[str, list[str]]:
    """Builder variable to the chain of record names from the root down to it."""
    records = _records(models)
    creators = {(r.name, method_names(r)[f.name].setter): f.type_ref
                for r in records.values() for f in r.fields if f.kind.is_container}
    chains: dict[str, list[str]] = {}
    for m in _ROOT_RE.finditer(test_text):
        chains[m.group(1)] = [m.group(2)]
    for m in _CREATE_RE.finditer(test_text):
        child, parent, method = m.groups()
        parent_chain = chains[parent]
        chains[child] = parent_chain + [creators[(parent_chain[-1], method)]]
    return chains


def calls(test_text: str) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for m in _CALL_RE.finditer(test_text):
        out.setdefault(m.group(1), []).append(m.group(2))
    return out


def unexercised_mandatory(test_text: str, models: Iterable[Model]) -> list[str]:
    """``Record/field`` for every builder in the test that skips a min >= 1 field."""
    models = list(models)
    records = _records(models)
    called = calls(test_text)
    missing = []
    for var, chain in builder_records(test_text, models).items():
        rec = records[chain[-1]]
        names = method_names(rec)
        for f in rec.fields:
            if f.cardinality.min >= 1 and names[f.name].setter not in called.get(var, []):
                missing.append(f"{rec.name}/{f.name}")
    return missing


def max_repetition(test_text: str, models: Iterable[Model]) -> int:
    """Largest count of one record name along any builder nesting chain."""
    chains = builder_records(test_text, models).values()
    return max((max(chain.count(n) for n in chain) for chain in chains), default=0)
