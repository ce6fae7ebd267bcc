"""A small logic-less template engine.

Supported tags: ``{{name}}`` (dotted lookup through the context stack),
``{{#name}}...{{/name}}`` (repeat for a list, render once for a true value
or a mapping), ``{{^name}}...{{/name}}`` (render when the value is empty or
false) and ``{{!comment}}``. A section or comment tag alone on its line
takes the whole line with it. Values are inserted verbatim, never escaped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Union

from ..errors import SmtkitError

_TAG_RE = re.compile(r"\{\{\s*([#^/!]?)\s*([^}]*?)\s*\}\}")
_STANDALONE_RE = re.compile(r"^[ \t]*\{\{\s*[#^/!][^}]*\}\}[ \t]*$")


@dataclass
class _Section:
    name: str
    inverted: bool
    children: list["_Node"] = field(default_factory=list)


@dataclass
class _Var:
    name: str


_Node = Union[str, _Var, _Section]


def _lines_with_standalone_tags_trimmed(text: str) -> str:
    out = []
    for line in text.splitlines(keepends=True):
        body = line.rstrip("\r\n")
        if _STANDALONE_RE.match(body) and len(_TAG_RE.findall(body)) == 1:
            out.append(body.strip())
        else:
            out.append(line)
    return "".join(out)


def parse_template(text: str, name: str = "<template>") -> list[_Node]:
    text = _lines_with_standalone_tags_trimmed(text)
    root: list[_Node] = []
    stack: list[tuple[_Section | None, list[_Node]]] = [(None, root)]
    pos = 0
    for m in _TAG_RE.finditer(text):
        if m.start() > pos:
            stack[-1][1].append(text[pos:m.start()])
        pos = m.end()
        sigil, tag = m.group(1), m.group(2)
        if sigil == "!":
            continue
        if not tag:
            raise SmtkitError("TEMPLATE_ERROR", "empty tag", f"{name}: offset {m.start()}")
        if sigil in ("#", "^"):
            sec = _Section(tag, sigil == "^")
            stack[-1][1].append(sec)
            stack.append((sec, sec.children))
        elif sigil == "/":
            open_sec = stack[-1][0]
            if open_sec is None or open_sec.name != tag:
                raise SmtkitError("TEMPLATE_ERROR", f"unexpected closing tag {tag!r}",
                                  f"{name}: offset {m.start()}")
            stack.pop()
        else:
            stack[-1][1].append(_Var(tag))
    if len(stack) > 1:
        raise SmtkitError("TEMPLATE_ERROR", f"section {stack[-1][0].name!r} is never closed", name)
    if pos < len(text):
        root.append(text[pos:])
    return root


def _lookup(stack: list[Any], name: str, template: str):
    if name == ".":
        return stack[-1]
    head, *rest = name.split(".")
    for ctx in reversed(stack):
        if isinstance(ctx, dict) and head in ctx:
            value = ctx[head]
            break
    else:
        raise SmtkitError("TEMPLATE_ERROR", f"placeholder {name!r} has no value", template)
    for part in rest:
        if not isinstance(value, dict) or part not in value:
            raise SmtkitError("TEMPLATE_ERROR", f"placeholder {name!r} has no value", template)
        value = value[part]
    return value


def _render(nodes: list[_Node], stack: list[Any], template: str, out: list[str]) -> None:
    for node in nodes:
        if isinstance(node, str):
            out.append(node)
        elif isinstance(node, _Var):
            value = _lookup(stack, node.name, template)
            out.append("" if value is None else str(value))
        else:
            value = _lookup(stack, node.name, template)
            if node.inverted:
                if not value:
                    _render(node.children, stack, template, out)
            elif isinstance(value, (list, tuple)):
                for item in value:
                    _render(node.children, stack + [item], template, out)
            elif isinstance(value, dict):
                _render(node.children, stack + [value], template, out)
            elif value:
                _render(node.children, stack, template, out)


def placeholders(text: str) -> set[str]:
    """Names referenced by variables and sections of a template."""
    return {m.group(2) for m in _TAG_RE.finditer(text) if m.group(1) in ("", "#", "^")}


def render(text: str, context: dict, name: str = "<template>") -> str:
    """Render ``text``; any placeholder without a value raises TEMPLATE_ERROR."""
    out: list[str] = []
    _render(parse_template(text, name), [context], name, out)
    return "".join(out)
