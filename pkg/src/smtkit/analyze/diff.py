"""Attribute-level comparison of two models of one specification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..model import AasField, Model

ATTRIBUTES = ("idShort", "valueType", "semanticId", "description", "examples")
# compared by mutual presence rather than by value
PRESENCE_ATTRIBUTES = frozenset({"description", "examples"})


@dataclass(frozen=True)
class FieldDiff:
    path: str
    attribute: str
    # match, differ, onlyA or onlyB
    status: str


@dataclass(frozen=True)
class DiffReport:
    per_field: tuple[FieldDiff, ...] = field(default_factory=tuple)

    @property
    def counts(self) -> dict[str, tuple[int, int, int]]:
        """attribute -> (match, differ, missing)."""
        out = {a: [0, 0, 0] for a in ATTRIBUTES}
        for d in self.per_field:
            slot = {"match": 0, "differ": 1}.get(d.status, 2)
            out[d.attribute][slot] += 1
        return {a: tuple(v) for a, v in out.items()}

    def overlap(self, attributes: Optional[Iterable[str]] = None) -> float:
        """Share of matching comparisons, in percent, optionally restricted to some attributes.

        Nothing to compare counts as full agreement.
        """
        wanted = set(attributes) if attributes is not None else set(ATTRIBUTES)
        rows = [d for d in self.per_field if d.attribute in wanted]
        if not rows:
            return 100.0
        return 100.0 * sum(d.status == "match" for d in rows) / len(rows)

    @property
    def overlap_percent(self) -> float:
        return self.overlap()

    @property
    def paths(self) -> list[str]:
        return sorted({d.path for d in self.per_field})


def _fields(model: Model) -> dict[str, AasField]:
    out = {}
    for rec in model.records():
        for f in rec.fields:
            out.setdefault(f"{rec.name}/{f.name}", f)
    return out


def _value(f: AasField, attribute: str):
    if attribute == "idShort":
        return f.id_short.render()
    if attribute == "valueType":
        return f.value_type.kind if f.value_type else None
    if attribute == "semanticId":
        return f.semantic_id.value if f.semantic_id else None
    if attribute == "description":
        return bool(f.description.strip())
    return bool(f.examples)


def diff_models(a: Model, b: Model) -> DiffReport:
    """Match fields by record name and idShort base, then compare five attributes each."""
    fa, fb = _fields(a), _fields(b)
    rows = []
    for path in sorted(set(fa) | set(fb)):
        left, right = fa.get(path), fb.get(path)
        for attr in ATTRIBUTES:
            if left is None:
                status = "onlyB"
            elif right is None:
                status = "onlyA"
            else:
                status = "match" if _value(left, attr) == _value(right, attr) else "differ"
            rows.append(FieldDiff(path, attr, status))
    return DiffReport(tuple(rows))
