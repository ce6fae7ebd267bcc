"""Normalization passes and Model construction."""

from .build import TransformResult, build_model, construct_model, run_passes, transform
from .passes import (classify_note, default_value_types, extract_enums, interpret_notes,
                     literal_name, merge_fragments, normalize_value_types, resolve_semantic_ids,
                     split_or_idshorts, synthesize_missing_types, uniquify_names)
from .registry import RegistryEntry, SemanticRegistry

__all__ = [
    "RegistryEntry", "SemanticRegistry", "TransformResult", "build_model", "classify_note",
    "construct_model", "default_value_types", "extract_enums", "interpret_notes", "literal_name",
    "merge_fragments", "normalize_value_types", "resolve_semantic_ids", "run_passes",
    "split_or_idshorts", "synthesize_missing_types", "transform", "uniquify_names",
]
