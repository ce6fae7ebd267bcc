"""Code generation from a Model through template packs."""

from .coerce import DEFAULT_SUBSTITUTED, DEFAULTS, TypedValue, coerce_example
from .generate import (dependency_closure, generate_accessor_api, generate_builder_api,
                       generate_sources, generate_tests, method_names, snake)
from .manifest import (BuildManifest, StepResult, generate_build_spec, parse_manifest,
                       render_manifest, run_manifest)
from .pack import SourceFile, SourceSet, TemplatePack, builtin_packs, load_pack
from .template import placeholders, render

__all__ = [
    "BuildManifest", "DEFAULTS", "DEFAULT_SUBSTITUTED", "SourceFile", "SourceSet", "StepResult",
    "TemplatePack", "TypedValue", "builtin_packs", "coerce_example", "dependency_closure",
    "generate_accessor_api", "generate_build_spec", "generate_builder_api", "generate_sources",
    "generate_tests", "load_pack", "method_names", "parse_manifest", "placeholders", "render",
    "render_manifest", "run_manifest", "snake",
]
