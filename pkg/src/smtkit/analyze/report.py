"""Text and tab-separated renderings of findings and diff reports."""

from __future__ import annotations

from typing import Sequence, Union

from ..errors import Finding, SmtkitError
from .diff import ATTRIBUTES, DiffReport

FORMATS = ("text", "machine")


def _clean(text: str) -> str:
    return " ".join(str(text).split())


def _check(fmt: str) -> None:
    if fmt not in FORMATS:
        raise SmtkitError("UNKNOWN_FORMAT", f"unknown report format {fmt!r}",
                          detail=", ".join(FORMATS))


def format_findings(findings: Sequence[Finding], fmt: str = "text") -> str:
    _check(fmt)
    ordered = sorted(findings, key=Finding.sort_key)
    if fmt == "machine":
        lines = ["\t".join((f.severity.value, f.code, _clean(str(f.location)), _clean(f.message)))
                 for f in ordered]
    elif not ordered:
        lines = ["no findings"]
    else:
        lines = [f"{f.severity.value} {f.code} {f.location}: {_clean(f.message)}" for f in ordered]
    return "\n".join(lines) + ("\n" if lines else "")


def format_diff(diff: DiffReport, fmt: str = "text") -> str:
    _check(fmt)
    ordered = sorted(diff.per_field, key=lambda d: (d.path, ATTRIBUTES.index(d.attribute)))
    pct = f"{diff.overlap_percent:.1f}"
    if fmt == "machine":
        lines = ["\t".join((d.path, d.attribute, d.status)) for d in ordered]
        lines.append(f"overlap\t{pct}")
    else:
        lines = [f"{d.status} {d.path} {d.attribute}" for d in ordered if d.status != "match"]
        lines.append(f"overlap {pct}%")
    return "\n".join(lines) + "\n"


def report(subject: Union[Sequence[Finding], DiffReport], fmt: str = "text") -> str:
    """Render findings or a diff report in ``fmt`` (``text`` or ``machine``)."""
    if isinstance(subject, DiffReport):
        return format_diff(subject, fmt)
    return format_findings(subject, fmt)
