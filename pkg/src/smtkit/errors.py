"""Exception and finding types shared by all pipeline stages."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class SmtkitError(Exception):
    """Failure of a pipeline operation.

    ``code`` is a stable identifier such as ``MALFORMED_GRID`` or
    ``TRANSFORM_FAILED``; ``location`` is free text (file, line/column,
    element path) and may be empty.
    """

    def __init__(self, code: str, message: str, location: str = "", detail=None):
        self.code = code
        self.message = message
        self.location = location
        self.detail = detail
        text = f"{code}: {message}"
        if location:
            text = f"{text} ({location})"
        super().__init__(text)


class Severity(enum.Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"
    INFO = "INFO"

    @property
    def rank(self) -> int:
        return {"ERROR": 0, "WARNING": 1, "INFO": 2}[self.value]


@dataclass(frozen=True)
class Location:
    source: str = ""
    path: str = ""

    def __str__(self) -> str:
        if self.source and self.path:
            return f"{self.source}:{self.path}"
        return self.source or self.path or "-"


@dataclass(frozen=True)
class Finding:
    code: str
    severity: Severity
    location: Location
    message: str

    def sort_key(self):
        return (self.location.source, self.location.path, self.code, self.message)


def finding(code: str, severity: Severity | str, source: str = "", path: str = "",
            message: str = "") -> Finding:
    if isinstance(severity, str):
        severity = Severity(severity)
    return Finding(code, severity, Location(source, path), message)
