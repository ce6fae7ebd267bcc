"""Template packs and the source sets rendered from them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from ..errors import SmtkitError
from .template import parse_template, placeholders

ARTIFACT_KINDS = ("builder", "accessor", "test", "manifest")

# top-level names each artifact template has to consume
REQUIRED_PLACEHOLDERS = {
    "builder": {"records"},
    "accessor": {"records"},
    "test": {"submodels"},
    "manifest": {"files", "tests", "steps"},
}


@dataclass(frozen=True)
class TemplatePack:
    name: str
    templates: dict[str, str]
    # artifact kind -> file name pattern over {spec}, {major}, {minor}
    file_naming: dict[str, str]

    def __post_init__(self):
        missing = [k for k in ARTIFACT_KINDS if k not in self.templates]
        if missing:
            raise SmtkitError("TEMPLATE_ERROR", f"template pack lacks {', '.join(missing)}",
                              self.name)
        for kind in ARTIFACT_KINDS:
            text = self.templates[kind]
            parse_template(text, f"{self.name}/{kind}")
            absent = REQUIRED_PLACEHOLDERS[kind] - placeholders(text)
            if absent:
                raise SmtkitError("TEMPLATE_ERROR",
                                  f"template {kind} never uses {', '.join(sorted(absent))}",
                                  self.name)
        for kind in ("builder", "accessor", "test"):
            if kind not in self.file_naming:
                raise SmtkitError("TEMPLATE_ERROR", f"no file naming pattern for {kind}", self.name)

    def file_name(self, kind: str, spec_number: str, version: Optional[tuple[int, int]]) -> str:
        major, minor = version or (0, 0)
        return self.file_naming[kind].format(spec=spec_number, major=major, minor=minor)

    def module_name(self, kind: str, spec_number: str, version: Optional[tuple[int, int]]) -> str:
        return self.file_name(kind, spec_number, version).rsplit(".", 1)[0]

    @property
    def manifest_name(self) -> str:
        return self.file_naming.get("manifest", "build.manifest")


def builtin_packs() -> list[str]:
    root = resources.files("smtkit.codegen") / "packs"
    return sorted(p.name for p in root.iterdir() if (p / "pack.json").is_file())


def load_pack(name_or_path: str = "python") -> TemplatePack:
    """Load a built-in pack by name or a pack directory by path."""
    candidate = Path(name_or_path)
    if (candidate / "pack.json").is_file():
        root = candidate
    else:
        root = resources.files("smtkit.codegen") / "packs" / name_or_path
        if not (root / "pack.json").is_file():
            raise SmtkitError("TEMPLATE_ERROR", f"no template pack named {name_or_path!r}",
                              detail=", ".join(builtin_packs()))
    try:
        meta = json.loads((root / "pack.json").read_text(encoding="utf-8"))
        templates = {kind: (root / fname).read_text(encoding="utf-8")
                     for kind, fname in meta["templates"].items()}
        return TemplatePack(meta.get("name", name_or_path), templates, dict(meta["file_naming"]))
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise SmtkitError("TEMPLATE_ERROR", f"template pack {name_or_path!r} is unreadable: {exc}")


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str


@dataclass(frozen=True)
class SourceSet:
    files: tuple[SourceFile, ...] = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        for f in self.files:
            if f.path in seen:
                raise ValueError(f"duplicate path {f.path!r} in source set")
            if not f.text.strip():
                raise ValueError(f"empty source text for {f.path!r}")
            seen.add(f.path)

    @property
    def lines_per_file(self) -> dict[str, int]:
        return {f.path: len(f.text.splitlines()) for f in self.files}

    @property
    def lines_total(self) -> int:
        return sum(self.lines_per_file.values())

    @property
    def paths(self) -> list[str]:
        return [f.path for f in self.files]

    def get(self, path: str) -> Optional[SourceFile]:
        for f in self.files:
            if f.path == path:
                return f
        return None

    def __add__(self, other: "SourceSet") -> "SourceSet":
        mine = set(self.paths)
        return SourceSet(self.files + tuple(f for f in other.files if f.path not in mine))

    def write(self, directory) -> list[Path]:
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for f in self.files:
            target = out / f.path
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(f.text, encoding="utf-8")
            written.append(target)
        return written
