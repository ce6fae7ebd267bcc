"""Linting of specifications and models, and model-to-model overlap."""

from .diff import ATTRIBUTES, DiffReport, FieldDiff, diff_models
from .lint import RULES, lint, location_exists
from .report import FORMATS, format_diff, format_findings, report

__all__ = [
    "ATTRIBUTES", "DiffReport", "FORMATS", "FieldDiff", "RULES", "diff_models", "format_diff",
    "format_findings", "lint", "location_exists", "report",
]
