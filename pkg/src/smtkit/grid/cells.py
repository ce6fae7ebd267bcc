"""Heuristic parsers for the four cells of a specification table row."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..errors import SmtkitError
from ..model.types import (Cardinality, ElementKind, ExampleValue, IdShortSpec, Placeholder,
                           SemanticId, ValueKind)
from .valuetypes import is_type_token, lookup_kind, lookup_type

ISO_639_1 = frozenset("""
aa ab ae af ak am an ar as av ay az ba be bg bh bi bm bn bo br bs ca ce ch co cr cs cu cv cy
da de dv dz ee el en eo es et eu fa ff fi fj fo fr fy ga gd gl gn gu gv ha he hi ho hr ht hu
hy hz ia id ie ig ii ik io is it iu ja jv ka kg ki kj kk kl km kn ko kr ks ku kv kw ky la lb
lg li ln lo lt lu lv mg mh mi mk ml mn mr ms mt my na nb nd ne ng nl nn no nr nv ny oc oj om
or os pa pi pl ps pt qu rm rn ro ru rw sa sc sd se sg si sk sl sm sn so sq sr ss st su sv sw
ta te tg th ti tk tl tn to tr ts tt tw ty ug uk ur uz ve vi vo wa wo xh yi yo za zh zu
""".split())

# ---------------------------------------------------------------- cardinality

_CARD_KEYWORDS = {
    "one": (1, 1), "zerotoone": (0, 1), "onetomany": (1, None), "zerotomany": (0, None),
}
_CARD_RANGE_RE = re.compile(r"(\d+)\.\.(\d+|\*|n)\Z", re.IGNORECASE)


def _card_compact(text: str) -> tuple[str, bool]:
    s = re.sub(r"\s+", "", text or "")
    s = s.replace("…", "..").replace("‥", "..")
    bracketed = False
    if len(s) >= 2 and s[0] in "[(" and s[-1] in "])":
        s = s[1:-1]
        bracketed = True
    return s, bracketed


def parse_cardinality(text: str) -> Cardinality:
    """Parse any cardinality notation found in specifications.

    Accepts ``a..b``, ``a..*``, ``a..n``, ``*``, a bare integer, the AASX
    keywords ``One``/``ZeroToOne``/``OneToMany``/``ZeroToMany`` and any of
    these in square brackets, with arbitrary whitespace.
    """
    s, _ = _card_compact(text)
    low = s.lower()
    try:
        if low in _CARD_KEYWORDS:
            return Cardinality(*_CARD_KEYWORDS[low])
        if low == "*":
            return Cardinality(0, None)
        m = _CARD_RANGE_RE.match(s)
        if m:
            hi = m.group(2)
            return Cardinality(int(m.group(1)), None if hi in ("*", "n", "N") else int(hi))
        if s.isdigit():
            return Cardinality(int(s), int(s))
    except ValueError:
        pass
    raise SmtkitError("UNPARSEABLE_CARDINALITY", f"cannot parse cardinality {text!r}",
                      detail=text)


def cardinality_notation(text: str) -> tuple[str, Optional[str]]:
    """Classify a raw cardinality by delimiter style and unbounded marker.

    Returns ``(style, marker)`` with style in ``plain``/``bracket``/``keyword``
    and marker ``*``, ``n`` or None when the text has no unbounded marker.
    """
    s, bracketed = _card_compact(text)
    if s.lower() in _CARD_KEYWORDS:
        return "keyword", None
    marker = None
    if s.endswith("*"):
        marker = "*"
    elif s.lower().endswith("..n"):
        marker = "n"
    return ("bracket" if bracketed else "plain"), marker


# ---------------------------------------------------------------- idShort

_KIND_PREFIX_RE = re.compile(r"\s*\[([^\]\n]+)\]\s*")
_BRACE_RE = re.compile(r"\{([^}]*)\}")
_TRAILING_BRACKET_RE = re.compile(r"^(.*?\S)\s*\[([^\]]*)\]\s*$")


def split_kind_prefix(text: str) -> tuple[Optional[str], str]:
    """Split a leading ``[SME type]`` token such as ``[MLP]`` off an idShort cell."""
    m = _KIND_PREFIX_RE.match(text or "")
    if m and lookup_kind(m.group(1)) is not None:
        return m.group(1).strip(), text[m.end():]
    return None, text or ""


def parse_id_short_cell(text: str) -> tuple[IdShortSpec, list[str]]:
    """Parse an idShort cell into its spec plus inline example fragments."""
    lines = [ln.strip() for ln in (text or "").replace("\r\n", "\n").split("\n")]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise SmtkitError("EMPTY_IDSHORT", "idShort cell is empty")
    first, inline = lines[0], lines[1:]
    m = _TRAILING_BRACKET_RE.match(first)
    if m and "{" not in m.group(2):
        first = m.group(1)
        inline.insert(0, m.group(2).strip())
    inline = [ln[1:-1].strip() if ln.startswith("[") and ln.endswith("]") else ln for ln in inline]

    braces = _BRACE_RE.findall(first)
    base = _BRACE_RE.sub("", first).strip()
    if not base and not braces:
        raise SmtkitError("EMPTY_IDSHORT", "idShort cell is empty")
    if not braces:
        return IdShortSpec(base), inline
    content = braces[0].strip()
    low = content.lower()
    if re.fullmatch(r"0+|\d+|n+", low):
        spec = IdShortSpec(base, Placeholder.COUNTING, digits=len(content))
    elif low == "arbitrary":
        spec = IdShortSpec(base, Placeholder.ARBITRARY)
    elif low == "variable":
        spec = IdShortSpec(base, Placeholder.VARIABLE)
    else:
        spec = IdShortSpec(base, Placeholder.FREE_TEXT, placeholder_text=content)
    return spec, inline


# ---------------------------------------------------------------- semanticId / description

_IRI_START_RE = re.compile(r"(https?://|urn:)", re.IGNORECASE)
_IRDI_TOKEN_RE = re.compile(r"\d{4}[-/]\d+[#/][^\s]*")
_URL_CHARS_RE = re.compile(r"[A-Za-z0-9\-._~:/?#\[\]@!$&'()*+,;=%]+\Z")
_IDENT_FIND_RE = re.compile(
    r"(https?://[^\s,;]+|urn:[^\s,;]+|\d{4}-\d+#\d{2}-[A-Z0-9]{6}#\d{3}|"
    r"\d{4}/\d+/{2,3}[\w\-.]+#[A-Z0-9_]{3,}#\d{3})")
_SEM_PREFIX_RE = re.compile(
    r"^\s*(?:semantic\s*id\s*[:=]?\s*)?(?:\[(?:IRI|IRDI|IRDI_PATH|IRDIPATH|URI|Custom)\]\s*)?",
    re.IGNORECASE)
_NOTE_RE = re.compile(r"^(note|constraint|recommendation)s?\b\s*[:\-]?\s*", re.IGNORECASE)
_DESC_TAG_RE = re.compile(
    r"^(preferred\s*name|short\s*name|definition|description|name)\s*(@[a-z]{2})?\s*:\s*",
    re.IGNORECASE)
_LANG_TAIL_RE = re.compile(r"\s*@([a-z]{2})\s*$", re.IGNORECASE)
_CONTINUE_ENDINGS = tuple("/-_.#:=?&")


@dataclass
class SemanticCell:
    semantic_id: Optional[SemanticId] = None
    description: str = ""
    notes: list[str] = field(default_factory=list)
    identifiers: list[SemanticId] = field(default_factory=list)
    url_healed: bool = False
    unseparated: bool = False


def find_identifiers(text: str) -> list[SemanticId]:
    """All IRI/IRDI identifiers appearing anywhere in ``text``, in order."""
    out = []
    for m in _IDENT_FIND_RE.finditer(text or ""):
        token = m.group(1).rstrip(").")
        sid = SemanticId.parse(token)
        if sid not in out:
            out.append(sid)
    return out


def _leading_identifier(line: str) -> Optional[str]:
    token = line.split(None, 1)[0] if line.split() else ""
    if _IRI_START_RE.match(token) or _IRDI_TOKEN_RE.match(token):
        return token
    return None


def analyze_semantic_cell(text: str) -> SemanticCell:
    """Full analysis of a semanticId/description cell, including heal flags."""
    out = SemanticCell()
    lines = [ln.strip() for ln in (text or "").replace("\r\n", "\n").split("\n")]
    while lines and not lines[0]:
        lines.pop(0)
    if not lines:
        return out
    lines[0] = _SEM_PREFIX_RE.sub("", lines[0], count=1).strip()

    token = _leading_identifier(lines[0])
    if token is not None:
        rest = lines[0][len(token):].strip()
        lines.pop(0)
        # a line break inside a URL: the token filled its line and the next
        # line starts with URL characters that continue it
        while not rest and lines:
            nxt = lines[0].split(None, 1)
            if not nxt or not _URL_CHARS_RE.match(nxt[0]):
                break
            if _leading_identifier(nxt[0]):
                break
            if not (token.endswith(_CONTINUE_ENDINGS) or "/" in nxt[0] or "#" in nxt[0]):
                break
            token += nxt[0]
            rest = nxt[1].strip() if len(nxt) > 1 else ""
            lines.pop(0)
            out.url_healed = True
        token = token.rstrip(",;")
        out.semantic_id = SemanticId.parse(token)
        if rest:
            out.unseparated = True
            lines.insert(0, rest)

    desc_lines: list[str] = []
    tagged: dict[str, list[str]] = {}
    langs_seen: list[tuple[Optional[str], str]] = []
    current_note: Optional[list[str]] = None
    for ln in lines:
        if not ln:
            continue
        m = _NOTE_RE.match(ln)
        if m and len(ln) > m.end():
            current_note = [ln[m.end():].strip()]
            out.notes.append(current_note)  # joined below
            continue
        if current_note is not None:
            current_note.append(ln)
            continue
        if _IDENT_FIND_RE.fullmatch(ln):
            # a further identifier on its own line, e.g. one per "or"-joined name
            continue
        tm = _DESC_TAG_RE.match(ln)
        if tm:
            tag = re.sub(r"\s+", "", tm.group(1).lower())
            body = ln[tm.end():]
            lang = tm.group(2)[1:].lower() if tm.group(2) else None
            lm = _LANG_TAIL_RE.search(body)
            if lm:
                lang, body = lm.group(1).lower(), body[:lm.start()]
            tagged.setdefault(tag, []).append(body.strip())
            langs_seen.append((lang, tag))
            continue
        lm = _LANG_TAIL_RE.search(ln)
        if lm and lm.group(1).lower() in ISO_639_1:
            langs_seen.append((lm.group(1).lower(), ""))
            desc_lines.append(f"\x00{lm.group(1).lower()}\x00{ln[:lm.start()].strip()}")
        else:
            desc_lines.append(ln)

    out.notes = [" ".join(parts) for parts in out.notes]
    if tagged:
        for key in ("definition", "description", "preferredname", "name", "shortname"):
            if key in tagged:
                desc_lines.append(tagged[key][0])
                break
    out.description = _pick_language(desc_lines)
    found = find_identifiers("\n".join(lines))
    out.identifiers = ([out.semantic_id] if out.semantic_id else []) + \
        [i for i in found if i != out.semantic_id]
    return out


def _pick_language(lines: list[str]) -> str:
    marked = [ln for ln in lines if ln.startswith("\x00")]
    if not marked:
        return re.sub(r"\s+", " ", " ".join(lines)).strip()
    by_lang: dict[str, list[str]] = {}
    plain = []
    for ln in lines:
        if ln.startswith("\x00"):
            _, lang, body = ln.split("\x00", 2)
            by_lang.setdefault(lang, []).append(body)
        else:
            plain.append(ln)
    chosen = by_lang.get("en") or next(iter(by_lang.values()))
    return re.sub(r"\s+", " ", " ".join(plain + chosen)).strip()


def parse_semantic_cell(text: str) -> tuple[Optional[SemanticId], str, list[str]]:
    """Split a semanticId/description cell into (semanticId, description, notes).

    >>> sid, desc, notes = parse_semantic_cell("0173-1#02-AAO677#002 Manufacturer name")
    >>> sid.value, desc
    ('0173-1#02-AAO677#002', 'Manufacturer name')
    """
    cell = analyze_semantic_cell(text)
    return cell.semantic_id, cell.description, cell.notes


# ---------------------------------------------------------------- value type / examples

_NUM = r"[+-]?\d+(?:[.,]\d+)?(?:[eE][+-]?\d+)?"
_TRAILING_UNIT_BRACKET_RE = re.compile(rf"^({_NUM})\s*\[([^\]]+)\]$")
_LEADING_UNIT_BRACKET_RE = re.compile(rf"^\[([^\]]+)\]\s*({_NUM})$")
_UNIT_LABEL_RE = re.compile(r"^(.*?)[\s,;]*\bunit\s*:\s*(\S.*)$", re.IGNORECASE)
_BARE_UNIT_RE = re.compile(rf"^({_NUM})\s*([A-Za-z°%µμΩ][^\s\d]*(?:/[^\s]+)?)$")
_EXAMPLE_LABEL_RE = re.compile(r"^(examples?|e\.\s?g\.)\s*:?\s*", re.IGNORECASE)
_QUOTED_LANG_RE = re.compile(r"^[\"'“„](.*)[\"'”“]\s*@([A-Za-z]{2})$")
_TRAILING_LANG_RE = re.compile(r"^(.*?)\s*@([A-Za-z]{2}):?$")
_PREFIX_LANG_RE = re.compile(r"^@([A-Za-z]{2})\s*:\s*(.*)$")
_LEADING_LANG_RE = re.compile(r"^([a-z]{2})\s*,\s*(.+)$")


@dataclass
class ValueCell:
    raw_type: Optional[str] = None
    examples: list[ExampleValue] = field(default_factory=list)
    lang_forms: list[str] = field(default_factory=list)
    unit_forms: list[str] = field(default_factory=list)


def _split_examples(text: str) -> list[str]:
    pieces: list[str] = []
    for piece in re.split(r"[\n;]", text):
        piece = piece.strip()
        if not piece:
            continue
        if re.match(r"unit\s*:", piece, re.IGNORECASE) and pieces:
            pieces[-1] = f"{pieces[-1]} {piece}"
            continue
        piece = _EXAMPLE_LABEL_RE.sub("", piece, count=1).strip()
        if piece:
            pieces.append(piece)
    return pieces


def _lang_example(piece: str, out: ValueCell) -> ExampleValue:
    for form, regex, text_group, lang_group in (
            ("quoted@l", _QUOTED_LANG_RE, 1, 2),
            ("@l:", _PREFIX_LANG_RE, 2, 1),
            ("@l", _TRAILING_LANG_RE, 1, 2),
            ("l,", _LEADING_LANG_RE, 2, 1)):
        m = regex.match(piece)
        if m and m.group(lang_group).lower() in ISO_639_1 and m.group(text_group).strip():
            out.lang_forms.append(form)
            return ExampleValue(m.group(text_group).strip(), m.group(lang_group).lower())
    return ExampleValue(piece)


def _unit_example(piece: str, out: ValueCell) -> ExampleValue:
    m = _TRAILING_UNIT_BRACKET_RE.match(piece)
    if m:
        out.unit_forms.append("[u]")
        return ExampleValue(m.group(1), unit=m.group(2).strip())
    m = _LEADING_UNIT_BRACKET_RE.match(piece)
    if m:
        out.unit_forms.append("[u]*")
        return ExampleValue(m.group(2), unit=m.group(1).strip())
    m = _UNIT_LABEL_RE.match(piece)
    if m and m.group(1).strip():
        out.unit_forms.append("Unit:u")
        return ExampleValue(m.group(1).strip(), unit=m.group(2).strip())
    m = _BARE_UNIT_RE.match(piece)
    if m:
        out.unit_forms.append("u")
        return ExampleValue(m.group(1), unit=m.group(2))
    return ExampleValue(piece)


_TYPE_WORD_RE = re.compile(r"(?:[a-z]+:)?[A-Z][A-Za-z0-9]{2,39}\Z")


def analyze_value_cell(text: str, element_kind: Optional[ElementKind] = None) -> ValueCell:
    out = ValueCell()
    text = (text or "").replace("\r\n", "\n").strip()
    if not text:
        return out
    rest = text
    m = re.match(r"\[([^\]\n]+)\]\s*", text)
    if m and is_type_token(m.group(1)):
        out.raw_type = m.group(1).strip()
        rest = text[m.end():]
    elif not m:
        first, _, remainder = text.partition("\n")
        # an unknown single capitalized word above the examples still names a type
        if is_type_token(first) or (remainder.strip() and _TYPE_WORD_RE.match(first.strip())):
            out.raw_type = first.strip()
            rest = remainder

    lang = (element_kind is ElementKind.MultiLanguageProperty
            or lookup_type(out.raw_type) is ValueKind.LangString)
    for piece in _split_examples(rest):
        out.examples.append(_lang_example(piece, out) if lang else _unit_example(piece, out))
    return out


def parse_value_cell(text: str, element_kind: Optional[ElementKind] = None
                     ) -> tuple[Optional[str], list[ExampleValue]]:
    """Split a value-type/example cell into the raw type token and examples."""
    cell = analyze_value_cell(text, element_kind)
    return cell.raw_type, cell.examples
