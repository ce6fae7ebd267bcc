"""Table-grid ingestion: loading, table detection, cell heuristics, extraction."""

from .cells import (ISO_639_1, analyze_semantic_cell, analyze_value_cell, cardinality_notation,
                    find_identifiers, parse_cardinality, parse_id_short_cell, parse_semantic_cell,
                    parse_value_cell, split_kind_prefix)
from .extract import extract_file, extract_spec
from .loader import Cell, Sheet, TableGrid, grid_from_data, grid_to_data, load_grid, save_grid
from .tables import FOOTNOTE_THRESHOLD, SpecTable, TableKind, detect_tables, rejoin_rows
from .valuetypes import TYPE_ALIASES, lookup_kind, lookup_type, normalize_type

__all__ = [
    "Cell", "FOOTNOTE_THRESHOLD", "ISO_639_1", "Sheet", "SpecTable", "TYPE_ALIASES", "TableGrid",
    "TableKind", "analyze_semantic_cell", "analyze_value_cell", "cardinality_notation",
    "detect_tables", "extract_file", "extract_spec", "find_identifiers", "grid_from_data",
    "grid_to_data", "load_grid", "lookup_kind", "lookup_type", "normalize_type",
    "parse_cardinality", "parse_id_short_cell", "parse_semantic_cell", "parse_value_cell",
    "rejoin_rows", "save_grid", "split_kind_prefix",
]
