"""Build manifests: which files to compile, which tests to run, in what order."""

from __future__ import annotations

import os
import shlex
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from ..errors import SmtkitError
from .pack import SourceFile, SourceSet, TemplatePack
from .template import render

STEP_ORDER = ("compile", "test", "package")
PACKAGE_NAME = "generated-sources.zip"


@dataclass(frozen=True)
class BuildManifest:
    compile_units: tuple[str, ...]
    test_entry_points: tuple[str, ...]
    # (step name, command); "{python}" stands for the interpreter running the build
    commands: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        missing = [t for t in self.test_entry_points if t not in self.compile_units]
        if missing:
            raise SmtkitError("INVALID_MANIFEST",
                              f"test entry points not among compile units: {', '.join(missing)}")
        names = [n for n, _ in self.commands]
        if names != [s for s in STEP_ORDER if s in names]:
            raise SmtkitError("INVALID_MANIFEST", f"steps out of order: {', '.join(names)}")


def _is_test(path: str) -> bool:
    return Path(path).name.startswith("test_")


def generate_build_spec(sources: Sequence[SourceSet]) -> BuildManifest:
    """Compile every file, run the test modules, then zip the sources."""
    if not sources or not any(s.files for s in sources):
        raise SmtkitError("EMPTY_SOURCESET", "no sources to build")
    files: list[str] = []
    for s in sources:
        files.extend(p for p in s.paths if p not in files)
    tests = [p for p in files if _is_test(p)]
    quoted = " ".join(shlex.quote(p) for p in files)
    commands = [("compile", f"{{python}} -m py_compile {quoted}")]
    if tests:
        commands.append(("test", "{python} -m pytest -q -p no:cacheprovider --rootdir=. "
                         + " ".join(shlex.quote(t) for t in tests)))
    commands.append(("package", f"{{python}} -m zipfile -c {PACKAGE_NAME} {quoted}"))
    return BuildManifest(tuple(files), tuple(tests), tuple(commands))


def render_manifest(manifest: BuildManifest, pack: TemplatePack) -> SourceFile:
    context = {
        "files": [{"path": p} for p in manifest.compile_units],
        "tests": [{"path": p} for p in manifest.test_entry_points],
        "steps": [{"name": n, "command": c} for n, c in manifest.commands],
    }
    return SourceFile(pack.manifest_name, render(pack.templates["manifest"], context,
                                                 f"{pack.name}/manifest"))


def parse_manifest(text: str, source: str = "build.manifest") -> BuildManifest:
    files, tests, steps = [], [], []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(":")
        rest = rest.strip()
        if tag == "file":
            files.append(rest)
        elif tag == "test":
            tests.append(rest)
        elif tag == "step":
            name, _, command = rest.partition(" ")
            steps.append((name, command.strip()))
        else:
            raise SmtkitError("SYNTAX_ERROR", f"unknown manifest record {tag!r}", f"{source}:{n}")
    return BuildManifest(tuple(files), tuple(tests), tuple(steps))


@dataclass(frozen=True)
class StepResult:
    name: str
    command: str
    returncode: int
    output: str

    @property
    def ok(self) -> bool:
        return self.returncode == 0


def run_manifest(directory, manifest: Optional[BuildManifest] = None,
                 python: str = sys.executable, timeout: float = 600) -> list[StepResult]:
    """Run each step in ``directory`` and stop at the first failure."""
    root = Path(directory)
    if manifest is None:
        path = root / "build.manifest"
        try:
            manifest = parse_manifest(path.read_text(encoding="utf-8"), str(path))
        except OSError as exc:
            raise SmtkitError("IO_ERROR", f"cannot read manifest: {exc}", str(path))
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(root.resolve()),
                                                      env.get("PYTHONPATH", "")]))
    env.pop("PYTEST_ADDOPTS", None)
    results = []
    for name, command in manifest.commands:
        argv = [python if a == "{python}" else a for a in shlex.split(command)]
        proc = subprocess.run(argv, cwd=root, env=env, capture_output=True, text=True,
                              timeout=timeout)
        results.append(StepResult(name, command, proc.returncode, proc.stdout + proc.stderr))
        if proc.returncode != 0:
            break
    return results
