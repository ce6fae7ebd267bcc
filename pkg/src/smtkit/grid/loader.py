"""The ``.grid.json`` table-grid input format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import SmtkitError


@dataclass(frozen=True)
class Cell:
    text: str = ""
    font_size: Optional[float] = None


@dataclass(frozen=True)
class Sheet:
    name: str
    rows: tuple[tuple[Cell, ...], ...] = ()


@dataclass(frozen=True)
class TableGrid:
    sheets: tuple[Sheet, ...] = field(default_factory=tuple)

    @classmethod
    def from_rows(cls, rows, name: str = "Sheet1") -> "TableGrid":
        """Convenience constructor from nested lists of strings or Cells."""
        def cell(c):
            return c if isinstance(c, Cell) else Cell(str(c))
        return cls((Sheet(name, tuple(tuple(cell(c) for c in r) for r in rows)),))


def _fail(msg: str, where: str) -> SmtkitError:
    return SmtkitError("MALFORMED_GRID", msg, where)


def _check_keys(obj, required: set[str], optional: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise _fail("expected an object", where)
    missing = required - obj.keys()
    if missing:
        raise _fail(f"missing key(s) {', '.join(sorted(missing))}", where)
    extra = obj.keys() - required - optional
    if extra:
        raise _fail(f"unknown key(s) {', '.join(sorted(extra))}", where)


def grid_from_data(data) -> TableGrid:
    _check_keys(data, {"sheets"}, set(), "$")
    if not isinstance(data["sheets"], list):
        raise _fail("sheets must be an array", "sheets")
    sheets = []
    for si, sheet in enumerate(data["sheets"]):
        where = f"sheets[{si}]"
        _check_keys(sheet, {"name", "rows"}, set(), where)
        if not isinstance(sheet["name"], str):
            raise _fail("name must be a string", f"{where}.name")
        if not isinstance(sheet["rows"], list):
            raise _fail("rows must be an array", f"{where}.rows")
        rows = []
        for ri, row in enumerate(sheet["rows"]):
            if not isinstance(row, list):
                raise _fail("row must be an array", f"{where}.rows[{ri}]")
            cells = []
            for ci, c in enumerate(row):
                cw = f"{where}.rows[{ri}][{ci}]"
                _check_keys(c, {"text"}, {"font_size"}, cw)
                if not isinstance(c["text"], str):
                    raise _fail("text must be a string", cw)
                size = c.get("font_size")
                if size is not None and (isinstance(size, bool) or not isinstance(size, (int, float))):
                    raise _fail("font_size must be a number", cw)
                cells.append(Cell(c["text"], size))
            rows.append(tuple(cells))
        sheets.append(Sheet(sheet["name"], tuple(rows)))
    return TableGrid(tuple(sheets))


def grid_to_data(grid: TableGrid) -> dict:
    def cell(c: Cell) -> dict:
        return {"text": c.text} if c.font_size is None else {"text": c.text, "font_size": c.font_size}
    return {"sheets": [{"name": s.name, "rows": [[cell(c) for c in r] for r in s.rows]}
                       for s in grid.sheets]}


def load_grid(path) -> TableGrid:
    """Read a ``.grid.json`` file; unknown keys are rejected."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SmtkitError("IO_ERROR", str(exc), str(path)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SmtkitError("MALFORMED_GRID", exc.msg,
                          f"{path}: line {exc.lineno}, column {exc.colno}") from None
    return grid_from_data(data)


def save_grid(grid: TableGrid, path) -> None:
    Path(path).write_text(json.dumps(grid_to_data(grid), ensure_ascii=False, indent=1) + "\n",
                          encoding="utf-8")
