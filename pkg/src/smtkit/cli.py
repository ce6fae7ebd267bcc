"""Command-line front end: ingest, transform, generate, lint and diff."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from .aasx import extract_package
from .analyze import diff_models, lint, report
from .codegen import (SourceSet, generate_build_spec, generate_sources, load_pack,
                      render_manifest, run_manifest)
from .errors import Finding, Severity, SmtkitError
from .extracted import ExtractedSpec, read_spec, write_spec
from .grid import extract_file
from .model import Model, parse_version, read_model, write_model
from .transform import SemanticRegistry, transform

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE, EXIT_IO, EXIT_PARSE, EXIT_CODEGEN = range(6)

_USAGE_CODES = {"UNKNOWN_KIND", "UNKNOWN_FORMAT", "USAGE"}
_IO_CODES = {"IO_ERROR"}
_CODEGEN_CODES = {"TEMPLATE_ERROR", "UNSUPPORTED_KIND", "UNRESOLVED_IMPORT", "EMPTY_SOURCESET",
                  "INVALID_MANIFEST", "BUILD_FAILED"}

KINDS = ("grid", "aasx", "model", "extracted")
_SUFFIXES = ((".extracted.json", "extracted"), (".grid.json", "grid"), (".aasx", "aasx"),
             (".smtm", "model"))


def exit_code_for(error: SmtkitError) -> int:
    if error.code in _USAGE_CODES:
        return EXIT_USAGE
    if error.code in _IO_CODES:
        return EXIT_IO
    if error.code in _CODEGEN_CODES:
        return EXIT_CODEGEN
    return EXIT_PARSE


def detect_kind(path: str, override: Optional[str] = None) -> str:
    if override:
        return override
    name = Path(path).name.lower()
    for suffix, kind in _SUFFIXES:
        if name.endswith(suffix):
            return kind
    raise SmtkitError("UNKNOWN_KIND", f"cannot tell the input kind of {path!r}; use --kind",
                      path)


def stem(path: str) -> str:
    name = Path(path).name
    for suffix, _ in _SUFFIXES:
        if name.lower().endswith(suffix):
            return name[:-len(suffix)]
    return Path(path).stem


@dataclass
class JobConfig:
    input_path: str
    input_kind: str
    registry_dir: Optional[str] = None
    output_dir: str = "."
    template_pack: str = "python"
    report_format: str = "text"
    partner_path: Optional[str] = None
    partner_kind: Optional[str] = None
    pins: dict[str, tuple[int, int]] = field(default_factory=dict)
    run_build: bool = False

    def __post_init__(self):
        if self.input_kind not in KINDS:
            raise SmtkitError("UNKNOWN_KIND", f"unknown input kind {self.input_kind!r}",
                              self.input_path)


@dataclass
class JobResult:
    code: int = EXIT_OK
    lines: list[str] = field(default_factory=list)

    def say(self, text: str) -> None:
        if not text:
            return
        self.lines.extend(text.rstrip("\n").split("\n"))


# -- pipeline helpers ---------------------------------------------------------

def load_extracted(path: str, kind: str) -> ExtractedSpec:
    if kind == "grid":
        return extract_file(path)
    if kind == "aasx":
        return extract_package(path)
    if kind == "extracted":
        return read_spec(path)
    raise SmtkitError("UNKNOWN_KIND", f"{kind} input carries no extracted specification", path)


def load_registry(cfg: JobConfig) -> SemanticRegistry:
    return SemanticRegistry.load(cfg.registry_dir, cfg.pins)


def to_model(path: str, kind: str, registry: SemanticRegistry,
             findings: Optional[list[Finding]] = None) -> Model:
    if kind == "model":
        return read_model(path)
    result = transform(load_extracted(path, kind), registry)
    if findings is not None:
        findings.extend(result.spec.findings)
    return result.model


def _summary(findings: Sequence[Finding]) -> str:
    by = {s: sum(f.severity is s for f in findings) for s in Severity}
    return ", ".join(f"{n} {s.value.lower()}" for s, n in by.items())


# -- commands -----------------------------------------------------------------

def cmd_ingest(cfg: JobConfig) -> JobResult:
    res = JobResult()
    spec = load_extracted(cfg.input_path, cfg.input_kind)
    out = Path(cfg.output_dir) / f"{stem(cfg.input_path)}.extracted.json"
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise SmtkitError("IO_ERROR", f"cannot create {out.parent}: {exc}", str(out.parent))
    write_spec(spec, out)
    if spec.findings:
        res.say(report(spec.findings, cfg.report_format))
    rows = sum(len(d.rows) for d in spec.defs)
    res.say(f"wrote {out} ({len(spec.defs)} types, {rows} rows; "
            f"findings: {_summary(spec.findings)})")
    return res


def cmd_transform(cfg: JobConfig, registry: Optional[SemanticRegistry] = None) -> JobResult:
    res = JobResult()
    registry = registry if registry is not None else load_registry(cfg)
    if cfg.input_kind == "model":
        model = read_model(cfg.input_path)
        findings: list[Finding] = []
    else:
        result = transform(load_extracted(cfg.input_path, cfg.input_kind), registry)
        model, findings = result.model, result.spec.findings
    targets = [Path(cfg.output_dir)]
    if cfg.registry_dir:
        targets.append(Path(cfg.registry_dir))
    written = []
    for d in targets:
        try:
            d.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise SmtkitError("IO_ERROR", f"cannot create {d}: {exc}", str(d))
        path = d / f"{model.key()}.smtm"
        if path not in written:
            write_model(model, path)
            written.append(path)
    registry.add(model)
    if findings:
        res.say(report(findings, cfg.report_format))
    res.say("validation: ok")
    for imp in model.imports:
        res.say(f"import {imp.spec_number} {imp.version[0]}.{imp.version[1]} "
                f"{', '.join(imp.names)}")
    res.say(f"wrote {', '.join(str(p) for p in written)}")
    return res


def cmd_generate(cfg: JobConfig) -> JobResult:
    res = JobResult()
    pack = load_pack(cfg.template_pack)
    registry = load_registry(cfg)
    model = to_model(cfg.input_path, cfg.input_kind, registry)
    api, tests = generate_sources(model, pack, registry.models)
    manifest = generate_build_spec([api, tests])
    everything = api + tests + SourceSet((render_manifest(manifest, pack),))
    try:
        everything.write(cfg.output_dir)
    except OSError as exc:
        raise SmtkitError("IO_ERROR", f"cannot write sources: {exc}", cfg.output_dir)
    for path, n in everything.lines_per_file.items():
        res.say(f"{n:6d}  {path}")
    res.say(f"generated {len(everything.files)} files, {everything.lines_total} lines "
            f"in {cfg.output_dir}")
    if cfg.run_build:
        for step in run_manifest(cfg.output_dir, manifest):
            res.say(f"step {step.name}: {'ok' if step.ok else 'failed'}")
            if not step.ok:
                res.say(step.output)
                res.code = EXIT_CODEGEN
    return res


def cmd_lint(cfg: JobConfig) -> JobResult:
    res = JobResult()
    if cfg.input_kind == "model":
        subject = read_model(cfg.input_path)
    else:
        subject = load_extracted(cfg.input_path, cfg.input_kind)
    findings = lint(subject)
    res.say(report(findings, cfg.report_format))
    if any(f.severity is Severity.ERROR for f in findings):
        res.code = EXIT_FINDINGS
    return res


def cmd_diff(cfg: JobConfig) -> JobResult:
    res = JobResult()
    if not cfg.partner_path:
        raise SmtkitError("USAGE", "diff needs two inputs")
    registry = load_registry(cfg)
    a = to_model(cfg.input_path, cfg.input_kind, registry)
    b = to_model(cfg.partner_path, cfg.partner_kind or detect_kind(cfg.partner_path), registry)
    res.say(report(diff_models(a, b), cfg.report_format))
    return res


# -- argument handling --------------------------------------------------------

def _pin(text: str) -> tuple[str, tuple[int, int]]:
    spec, _, version = text.partition("=")
    parsed = parse_version(version)
    if not spec or parsed is None:
        raise argparse.ArgumentTypeError(f"expected SPEC=MAJOR.MINOR, got {text!r}")
    return spec, parsed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", default=os.environ.get("SMTKIT_REGISTRY"),
                        help="directory of transformed models (default: $SMTKIT_REGISTRY)")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--pack", default="python", help="template pack name or directory")
    common.add_argument("--kind", choices=KINDS, help="input kind, overriding the file suffix")
    common.add_argument("--jobs", type=int, default=1, help="process inputs concurrently")
    common.add_argument("--pin", type=_pin, action="append", default=[],
                        help="prefer one version of an imported spec, e.g. 02002=1.0")

    parser = argparse.ArgumentParser(prog="smtkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("ingest", "extract a grid or AASX into a sidecar file"),
                       ("transform", "build the intermediary model"),
                       ("generate", "generate API, tests and a build manifest"),
                       ("lint", "check a specification or model")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("inputs", nargs="+")
        if name == "generate":
            p.add_argument("--run", action="store_true", help="run the build manifest afterwards")
    p = sub.add_parser("diff", parents=[common], help="overlap between two models")
    p.add_argument("inputs", nargs=2, metavar="input")
    p.add_argument("--kind-b", choices=KINDS, help="kind of the second input")
    return parser


def _config(args, path: str) -> JobConfig:
    return JobConfig(input_path=path, input_kind=detect_kind(path, args.kind),
                     registry_dir=args.registry, output_dir=args.out, template_pack=args.pack,
                     report_format=args.format, pins=dict(args.pin),
                     run_build=getattr(args, "run", False))


def _guarded(job: Callable[[], JobResult]) -> JobResult:
    try:
        return job()
    except SmtkitError as exc:
        res = JobResult(exit_code_for(exc))
        res.say(f"error: {exc}")
        return res


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    results: list[JobResult]
    if args.command == "diff":
        def job() -> JobResult:
            cfg = _config(args, args.inputs[0])
            cfg.partner_path = args.inputs[1]
            cfg.partner_kind = detect_kind(args.inputs[1], args.kind_b)
            return cmd_diff(cfg)
        results = [_guarded(job)]
    elif args.command == "transform":
        # registry updates stay serial so later inputs can import earlier ones
        shared: dict[str, SemanticRegistry] = {}

        def transform_job(path: str) -> JobResult:
            cfg = _config(args, path)
            if "reg" not in shared:
                shared["reg"] = load_registry(cfg)
            return cmd_transform(cfg, shared["reg"])
        results = [_guarded(lambda p=p: transform_job(p)) for p in args.inputs]
    else:
        command = {"ingest": cmd_ingest, "generate": cmd_generate, "lint": cmd_lint}[args.command]
        jobs = [lambda p=p: command(_config(args, p)) for p in args.inputs]
        if args.jobs > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_guarded, jobs))
        else:
            results = [_guarded(j) for j in jobs]

    for path, res in zip(args.inputs if args.command != "diff" else args.inputs[:1], results):
        if len(results) > 1:
            print(f"== {path}", file=out)
        for line in res.lines:
            print(line, file=out)
    return max(r.code for r in results)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
