"""Classification of grid regions into two- and four-column spec tables."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Optional

from ..errors import Finding, Location, Severity, SmtkitError
from .loader import Cell, TableGrid

FOOTNOTE_THRESHOLD = 8.0

TWO_COLUMN_KEYS = {
    "idshort", "class", "semanticid", "parent", "explanation", "description", "cardinality",
    "version", "title", "specification", "number", "kind", "appliesto", "note", "notes",
    "revision", "name",
}
# keys that make a key/value region a header table
TWO_COLUMN_ANCHORS = {"idshort", "semanticid", "version"}
_CARD_HEADERS = {"card", "card.", "cardinality", "card.:", "mult.", "multiplicity"}


class TableKind(enum.Enum):
    TwoColumn = "TwoColumn"
    FourColumn = "FourColumn"


@dataclass(frozen=True)
class SpecTable:
    kind: TableKind
    header_rows: tuple[tuple[str, ...], ...]
    body_rows: tuple[tuple[str, ...], ...]
    origin_sheet: str = ""
    origin_row_index: int = 0
    # grid row index of each body row, for locations in findings
    body_row_indices: tuple[int, ...] = ()

    def location(self, body_index: int) -> str:
        rows = self.body_row_indices
        grid_row = rows[body_index] if body_index < len(rows) else self.origin_row_index
        return f"{self.origin_sheet}!row{grid_row + 1}"


def key_of(text: str) -> str:
    """Normalize a two-column header key: lowercase, no blanks or trailing colon."""
    return re.sub(r"[\s_\-]+", "", text.strip().lower()).rstrip(":")


def _visible(row: tuple[Cell, ...]) -> tuple[list[str], bool]:
    """Cell texts with footnote-sized cells blanked, and whether any was blanked."""
    out, dropped = [], False
    for c in row:
        if c.font_size is not None and c.font_size < FOOTNOTE_THRESHOLD:
            out.append("")
            dropped = dropped or bool(c.text.strip())
        else:
            out.append(c.text)
    while out and not out[-1].strip():
        out.pop()
    return out, dropped


def _nonempty(row: list[str]) -> list[str]:
    return [c for c in row if c.strip()]


def _is_four_header(row: list[str]) -> bool:
    return bool(row) and key_of(row[0]).startswith("idshort") and len(_nonempty(row)) >= 3


def _has_card_header(row: list[str]) -> bool:
    return any(key_of(c) in _CARD_HEADERS or key_of(c).startswith("card") for c in row)


_HEADER_WORDS = {"semanticid", "description", "valuetype", "example", "examples", "card",
                 "card.", "cardinality", "mult.", "multiplicity", "idshort", "value", "type"}


def _is_header_like(row: list[str]) -> bool:
    words = [key_of(w) for c in _nonempty(row) for w in c.split("/")]
    return bool(words) and all(w in _HEADER_WORDS or w.startswith("card") for w in words)


def _four_cells(row: list[str]) -> tuple[str, str, str, str]:
    cells = [c for c in row]
    if len(cells) > 4:
        # surplus columns from a wide extraction are folded into the description
        extra = [c for c in cells[4:] if c.strip()]
        cells = cells[:4]
        if extra:
            cells[1] = "\n".join([cells[1], *extra]) if cells[1] else "\n".join(extra)
    cells += [""] * (4 - len(cells))
    return tuple(cells)  # type: ignore[return-value]


def _is_kv_row(row: list[str]) -> bool:
    ne = _nonempty(row)
    return 1 <= len(ne) <= 2 and key_of(row[0] if row else "") in TWO_COLUMN_KEYS


def detect_tables(grid: TableGrid, findings: Optional[list[Finding]] = None,
                  source: str = "") -> list[SpecTable]:
    """Split every sheet into blank-row-separated regions and classify them.

    Footnote-sized cells are excluded before classification. Rows consisting
    only of footnotes vanish without closing the region they sit in.
    """
    tables: list[SpecTable] = []
    for sheet in grid.sheets:
        region: list[tuple[int, list[str]]] = []
        for ri, row in enumerate(sheet.rows):
            visible, dropped = _visible(row)
            if not _nonempty(visible):
                if dropped:
                    continue
                if region:
                    tables.extend(_classify(region, sheet.name, findings, source))
                region = []
                continue
            region.append((ri, visible))
        if region:
            tables.extend(_classify(region, sheet.name, findings, source))
    return tables


def _classify(region, sheet: str, findings, source: str) -> list[SpecTable]:
    out: list[SpecTable] = []
    i = 0
    while i < len(region):
        ri, row = region[i]
        if _is_four_header(row):
            headers = [tuple(row)]
            j = i + 1
            card_ok = _has_card_header(row)
            if j < len(region) and _is_header_like(region[j][1]):
                headers.append(tuple(region[j][1]))
                card_ok = card_ok or _has_card_header(region[j][1])
                j += 1
            if card_ok:
                body, idx = [], []
                while j < len(region) and not _is_four_header(region[j][1]) \
                        and not _starts_kv_table(region, j):
                    body.append(_four_cells(region[j][1]))
                    idx.append(region[j][0])
                    j += 1
                out.append(SpecTable(TableKind.FourColumn, tuple(headers), tuple(body), sheet,
                                     ri, tuple(idx)))
                i = j
                continue
        if _is_kv_row(row):
            j = i
            body, idx = [], []
            while j < len(region) and _is_kv_row(region[j][1]):
                r = region[j][1]
                body.append((r[0].strip(), r[1] if len(r) > 1 else ""))
                idx.append(region[j][0])
                j += 1
            if any(key_of(k) in TWO_COLUMN_ANCHORS for k, _ in body):
                out.append(SpecTable(TableKind.TwoColumn, (tuple(body[0]),), tuple(body), sheet,
                                     ri, tuple(idx)))
            elif findings is not None:
                findings.append(Finding("TABLE_SKIPPED", Severity.INFO,
                                        Location(source, f"{sheet}!row{ri + 1}"),
                                        "key/value region without idShort, semanticId or version"))
            i = j
            continue
        # unclassifiable run: skip to the next candidate header
        j = i + 1
        while j < len(region) and not _is_four_header(region[j][1]) and not _is_kv_row(region[j][1]):
            j += 1
        if findings is not None:
            findings.append(Finding("TABLE_SKIPPED", Severity.INFO,
                                    Location(source, f"{sheet}!row{ri + 1}"),
                                    f"{j - i} row(s) match no table layout"))
        i = j
    return out


def _starts_kv_table(region, j: int) -> bool:
    """A key/value header table starting at ``j`` ends a running four-column body."""
    row = region[j][1]
    return _is_kv_row(row) and key_of(row[0]) == "idshort"


def is_continuation(row: tuple[str, ...]) -> bool:
    return not row[0].strip() and any(c.strip() for c in row[1:])


def rejoin_rows(table: SpecTable) -> SpecTable:
    """Merge continuation rows (empty idShort cell) into their predecessor."""
    if table.kind is not TableKind.FourColumn:
        raise SmtkitError("NOT_FOUR_COLUMN", "rejoin_rows needs a FourColumn table")
    rows: list[list[str]] = []
    idx: list[int] = []
    indices = table.body_row_indices or tuple(range(len(table.body_rows)))
    for n, row in enumerate(table.body_rows):
        if is_continuation(row):
            if not rows:
                raise SmtkitError("ORPHAN_CONTINUATION",
                                  "first body row continues a row that does not exist",
                                  table.location(n))
            prev = rows[-1]
            for k in range(1, 4):
                part = row[k]
                if part.strip():
                    prev[k] = f"{prev[k]}\n{part}" if prev[k] else part
            continue
        if not any(c.strip() for c in row):
            continue
        rows.append(list(row))
        idx.append(indices[n])
    return replace(table, body_rows=tuple(tuple(r) for r in rows), body_row_indices=tuple(idx))
