"""Wiki markup: property lines, links, commands, and a small Markdown subset.

Page source is line-oriented.  Every line is exactly one of:

* a property line ``Predicate: value`` whose predicate is a WikiWord,
* a command line ``{{name}}`` / ``{{name Arg}}`` with a known command name,
* a body line, rendered through the Markdown subset.

Parsing is total: malformed constructs degrade to plain text, never to an
error.  The exact grammar is documented in ``docs/grammar.md``.
"""

from __future__ import annotations

import datetime
import html
import re
import unicodedata
from dataclasses import dataclass
from urllib.parse import quote

# --- page names and links ---------------------------------------------------

# A WikiWord is either classic CamelCase (two or more capital-initial runs,
# e.g. HomePage, JSPWiki) or lowerCamelCase with at least two capitals after
# the first character (e.g. isAuthorOf).
_CAMEL = r"[A-Z][a-z0-9]*(?:[A-Z][a-z0-9]*)+"
_LOWER_CAMEL = r"[a-z][a-z0-9]*(?:[A-Z][a-z0-9]*){2,}"
WIKIWORD_PATTERN = rf"(?:{_CAMEL}|{_LOWER_CAMEL})"
WIKIWORD_RE = re.compile(WIKIWORD_PATTERN)

# Freetext links: [[Page Name]].  Contents may not include square brackets.
FREETEXT_PATTERN = r"\[\[([^\[\]\n]+)\]\]"
FREETEXT_RE = re.compile(FREETEXT_PATTERN)

# Maximal ASCII-alphanumeric runs are the tokens considered for WikiWords.
_WORD_RE = re.compile(r"[A-Za-z0-9]+")

PROPERTY_LINE_PATTERN = rf"^({WIKIWORD_PATTERN}): (.*\S.*)$"
PROPERTY_LINE_RE = re.compile(PROPERTY_LINE_PATTERN)

COMMAND_LINE_RE = re.compile(r"\{\{([a-z]+)(?:[ \t]+([^{}]+?))?\}\}")
KNOWN_COMMANDS = frozenset(
    {"forwardlinks", "triples", "breadcrumbs", "allpages", "sametype", "properties"}
)

_DATE_RE = re.compile(r"\d{4}-\d{2}-\d{2}")
_INTEGER_RE = re.compile(r"-?[0-9]+")
_DECIMAL_RE = re.compile(r"-?[0-9]+\.[0-9]+")

_CODE_RE = re.compile(r"`([^`\n]+)`")
_STRONG_RE = re.compile(r"\*\*(.+?)\*\*")
_EM_RE = re.compile(r"\*([^*\n]+)\*")
_URL_RE = re.compile(r"https?://[^\s<>]+")
_HEADING_RE = re.compile(r"(#{1,6}) (.*)$")
_LIST_ITEM_RE = re.compile(r"- (.*)$")
_URL_TRAILING_PUNCT = ".,;:!?"


def is_wikiword(word: str) -> bool:
    return WIKIWORD_RE.fullmatch(word) is not None


def is_valid_page_name(name: str) -> bool:
    """A page name is non-empty, has no '/', no control characters, and no
    surrounding whitespace."""
    if not name or name != name.strip():
        return False
    if "/" in name:
        return False
    return not any(unicodedata.category(c) == "Cc" for c in name)


def normalize_page_name(raw: str) -> str | None:
    """Trim surrounding whitespace; return None when no valid name remains."""
    name = raw.strip()
    return name if is_valid_page_name(name) else None


def page_href(name: str) -> str:
    return "/wiki/" + quote(name, safe="")


def edit_href(name: str) -> str:
    return page_href(name) + "/edit"


# --- domain types -----------------------------------------------------------


@dataclass(frozen=True)
class PageRef:
    """A resource-valued object: a reference to another page."""

    name: str


@dataclass(frozen=True)
class TypedLiteral:
    """A literal object with its lexical form exactly as typed (modulo the
    surrounding-whitespace trim) and one of the datatypes string, integer,
    decimal, date."""

    lexical: str
    datatype: str


ObjectValue = PageRef | TypedLiteral


@dataclass(frozen=True)
class PropertyPair:
    predicate: str
    object: ObjectValue
    source_line: int


@dataclass(frozen=True)
class WikiCommand:
    name: str
    arg: str | None = None


@dataclass(frozen=True)
class Text:
    text: str


@dataclass(frozen=True)
class CodeSpan:
    text: str


@dataclass(frozen=True)
class WikiLink:
    name: str


@dataclass(frozen=True)
class UrlLink:
    url: str


@dataclass(frozen=True)
class Emphasis:
    children: tuple["Inline", ...]


@dataclass(frozen=True)
class Strong:
    children: tuple["Inline", ...]


Inline = Text | CodeSpan | WikiLink | UrlLink | Emphasis | Strong


@dataclass(frozen=True)
class Heading:
    level: int
    inline: tuple[Inline, ...]


@dataclass(frozen=True)
class Paragraph:
    inline: tuple[Inline, ...]


@dataclass(frozen=True)
class UnorderedList:
    items: tuple[tuple[Inline, ...], ...]


Block = Heading | Paragraph | UnorderedList


@dataclass(frozen=True)
class ParsedPage:
    """Extraction result for one page.

    ``flow`` interleaves body blocks and commands in source order; ``body``
    and ``commands`` are its two projections.  ``line_roles`` records, per
    source line, whether it was consumed as ``property``, ``command`` or
    ``body`` (the three partition the source).
    """

    name: str
    properties: tuple[PropertyPair, ...]
    links: frozenset[str]
    commands: tuple[WikiCommand, ...]
    body: tuple[Block, ...]
    flow: tuple[Block | WikiCommand, ...]
    line_roles: tuple[str, ...]


# --- line-level parsing -----------------------------------------------------


def split_lines(source: str) -> list[str]:
    """Split on \\r\\n, \\r, or \\n; a trailing terminator does not produce a
    final empty line."""
    if not source:
        return []
    lines = re.split(r"\r\n|\r|\n", source)
    if lines[-1] == "" and source[-1] in "\r\n":
        lines.pop()
    return lines


def classify_value(raw: str) -> ObjectValue:
    """Classify a property value: a single WikiWord or a single [[...]] token
    is a page reference, anything else a literal typed by first match among
    date, integer, decimal, string."""
    value = raw.strip()
    if WIKIWORD_RE.fullmatch(value):
        return PageRef(value)
    bracketed = FREETEXT_RE.fullmatch(value)
    if bracketed:
        name = normalize_page_name(bracketed.group(1))
        if name is not None:
            return PageRef(name)
    if _DATE_RE.fullmatch(value) and _is_calendar_date(value):
        return TypedLiteral(value, "date")
    if _INTEGER_RE.fullmatch(value):
        return TypedLiteral(value, "integer")
    if _DECIMAL_RE.fullmatch(value):
        return TypedLiteral(value, "decimal")
    return TypedLiteral(value, "string")


def _is_calendar_date(lexical: str) -> bool:
    try:
        datetime.date.fromisoformat(lexical)
    except ValueError:
        return False
    return True


def _parse_command_line(line: str) -> WikiCommand | None:
    m = COMMAND_LINE_RE.fullmatch(line.strip())
    if not m or m.group(1) not in KNOWN_COMMANDS:
        return None
    arg = None
    if m.group(2) is not None:
        raw = m.group(2).strip()
        inner = FREETEXT_RE.fullmatch(raw)
        if inner:
            raw = inner.group(1)
        arg = normalize_page_name(raw)
        if arg is None:
            return None
    return WikiCommand(m.group(1), arg)


def _mask(text: str, rx: re.Pattern[str]) -> str:
    return rx.sub(lambda m: " " * len(m.group(0)), text)


def _scan_links(text: str) -> list[str]:
    """Links in positional order: [[...]] contents plus WikiWords, with code
    spans masked and [[...]] contents shielded from CamelCase interpretation."""
    masked = _mask(text, _CODE_RE)
    found: list[tuple[int, str]] = []
    for m in FREETEXT_RE.finditer(masked):
        name = normalize_page_name(m.group(1))
        if name is not None:
            found.append((m.start(), name))
    masked = _mask(masked, FREETEXT_RE)
    for m in _WORD_RE.finditer(masked):
        if WIKIWORD_RE.fullmatch(m.group(0)):
            found.append((m.start(), m.group(0)))
    found.sort(key=lambda pair: pair[0])
    return [name for _, name in found]


def extract_links(text: str) -> set[str]:
    """All CamelCase words outside code spans plus all [[...]] contents."""
    return set(_scan_links(text))


def extract_links_ordered(source: str) -> list[str]:
    """Outgoing references of a full page source in order of appearance.

    Property lines contribute their predicate and, for reference-valued
    properties, the referenced page; body lines contribute their text links.
    Duplicates are kept (callers dedup as needed)."""
    ordered: list[str] = []
    for line in split_lines(source):
        kind, payload = _classify_line(line)
        if kind == "property":
            predicate, obj = payload
            ordered.append(predicate)
            if isinstance(obj, PageRef):
                ordered.append(obj.name)
        elif kind == "body":
            ordered.extend(_scan_links(line))
    return ordered


def _classify_line(line: str):
    m = PROPERTY_LINE_RE.fullmatch(line)
    if m:
        return "property", (m.group(1), classify_value(m.group(2)))
    command = _parse_command_line(line)
    if command is not None:
        return "command", command
    return "body", None


# --- inline parsing ---------------------------------------------------------


def parse_inline(text: str) -> tuple[Inline, ...]:
    nodes: list[Inline] = []
    pos = 0
    for m in _CODE_RE.finditer(text):
        nodes.extend(_parse_span(text[pos : m.start()]))
        nodes.append(CodeSpan(m.group(1)))
        pos = m.end()
    nodes.extend(_parse_span(text[pos:]))
    return tuple(nodes)


_SPAN_RULES: tuple[tuple[str, re.Pattern[str]], ...] = (
    ("strong", _STRONG_RE),
    ("em", _EM_RE),
    ("freetext", FREETEXT_RE),
    ("url", _URL_RE),
)


def _parse_span(text: str) -> list[Inline]:
    out: list[Inline] = []
    pos = 0
    while pos < len(text):
        best: tuple[int, int, str, re.Match[str]] | None = None
        for priority, (kind, rx) in enumerate(_SPAN_RULES):
            m = rx.search(text, pos)
            if m and (best is None or (m.start(), priority) < (best[0], best[1])):
                best = (m.start(), priority, kind, m)
        if best is None:
            out.extend(_parse_words(text[pos:]))
            break
        _, _, kind, m = best
        out.extend(_parse_words(text[pos : m.start()]))
        if kind == "strong":
            out.append(Strong(tuple(_parse_span(m.group(1)))))
            pos = m.end()
        elif kind == "em":
            out.append(Emphasis(tuple(_parse_span(m.group(1)))))
            pos = m.end()
        elif kind == "freetext":
            name = normalize_page_name(m.group(1))
            if name is not None:
                out.append(WikiLink(name))
            else:
                out.append(Text(m.group(0)))
            pos = m.end()
        else:
            url = m.group(0).rstrip(_URL_TRAILING_PUNCT)
            out.append(UrlLink(url))
            pos = m.start() + len(url)
    return out


def _parse_words(chunk: str) -> list[Inline]:
    """Plain text with maximal alphanumeric tokens promoted to wiki links
    when they are WikiWords."""
    out: list[Inline] = []
    pos = 0
    for m in _WORD_RE.finditer(chunk):
        if not WIKIWORD_RE.fullmatch(m.group(0)):
            continue
        if pos < m.start():
            out.append(Text(chunk[pos : m.start()]))
        out.append(WikiLink(m.group(0)))
        pos = m.end()
    if pos < len(chunk):
        out.append(Text(chunk[pos:]))
    return out


# --- page parsing -----------------------------------------------------------


def parse_page(name: str, source: str) -> ParsedPage:
    """Parse page source into properties, commands, links, and body blocks.

    Total over any input text; every source line ends up with exactly one of
    the roles property/command/body.
    """
    lines = split_lines(source)
    roles: list[str] = []
    properties: list[PropertyPair] = []
    flow: list[Block | WikiCommand] = []
    links: set[str] = set()

    paragraph: list[str] = []
    items: list[tuple[Inline, ...]] = []

    def flush_paragraph() -> None:
        if paragraph:
            flow.append(Paragraph(parse_inline("\n".join(paragraph))))
            paragraph.clear()

    def flush_items() -> None:
        if items:
            flow.append(UnorderedList(tuple(items)))
            items.clear()

    for number, line in enumerate(lines, start=1):
        kind, payload = _classify_line(line)
        if kind == "property":
            predicate, obj = payload
            properties.append(PropertyPair(predicate, obj, number))
            links.add(predicate)
            if isinstance(obj, PageRef):
                links.add(obj.name)
            flush_paragraph()
            flush_items()
            roles.append("property")
            continue
        if kind == "command":
            flush_paragraph()
            flush_items()
            flow.append(payload)
            roles.append("command")
            continue
        roles.append("body")
        links.update(_scan_links(line))
        if not line.strip():
            flush_paragraph()
            flush_items()
            continue
        heading = _HEADING_RE.fullmatch(line)
        if heading:
            flush_paragraph()
            flush_items()
            flow.append(Heading(len(heading.group(1)), parse_inline(heading.group(2))))
            continue
        item = _LIST_ITEM_RE.fullmatch(line)
        if item:
            flush_paragraph()
            items.append(parse_inline(item.group(1)))
            continue
        flush_items()
        paragraph.append(line)

    flush_paragraph()
    flush_items()

    return ParsedPage(
        name=name,
        properties=tuple(properties),
        links=frozenset(links),
        commands=tuple(node for node in flow if isinstance(node, WikiCommand)),
        body=tuple(node for node in flow if not isinstance(node, WikiCommand)),
        flow=tuple(flow),
        line_roles=tuple(roles),
    )


# --- HTML rendering ----------------------------------------------------------


def render_page_link(name: str, resolver) -> str:
    """Hyperlink to an existing page, or a create-styled link to the edit
    form when the target does not exist."""
    label = html.escape(name)
    if resolver(name):
        return f'<a href="{html.escape(page_href(name))}">{label}</a>'
    return f'<a class="create" href="{html.escape(edit_href(name))}">{label}</a>'


def render_inline(nodes: tuple[Inline, ...], resolver) -> str:
    parts: list[str] = []
    for node in nodes:
        if isinstance(node, Text):
            parts.append(html.escape(node.text))
        elif isinstance(node, CodeSpan):
            parts.append(f"<code>{html.escape(node.text)}</code>")
        elif isinstance(node, WikiLink):
            parts.append(render_page_link(node.name, resolver))
        elif isinstance(node, UrlLink):
            url = html.escape(node.url)
            parts.append(f'<a href="{url}">{url}</a>')
        elif isinstance(node, Emphasis):
            parts.append(f"<em>{render_inline(node.children, resolver)}</em>")
        else:
            parts.append(f"<strong>{render_inline(node.children, resolver)}</strong>")
    return "".join(parts)


def render_object(obj: ObjectValue, resolver) -> str:
    if isinstance(obj, PageRef):
        return render_page_link(obj.name, resolver)
    css = f"literal literal-{obj.datatype}"
    return f'<span class="{css}">{html.escape(obj.lexical)}</span>'


def render_property_table(properties: tuple[PropertyPair, ...], resolver) -> str:
    rows = []
    for pair in properties:
        rows.append(
            "<tr>"
            f'<td class="predicate">{render_page_link(pair.predicate, resolver)}</td>'
            f'<td class="object">{render_object(pair.object, resolver)}</td>'
            "</tr>"
        )
    return '<table class="properties">\n' + "\n".join(rows) + "\n</table>"


def render_block(block: Block, resolver) -> str:
    if isinstance(block, Heading):
        inner = render_inline(block.inline, resolver)
        return f"<h{block.level}>{inner}</h{block.level}>"
    if isinstance(block, Paragraph):
        return f"<p>{render_inline(block.inline, resolver)}</p>"
    items = "\n".join(
        f"<li>{render_inline(item, resolver)}</li>" for item in block.items
    )
    return f"<ul>\n{items}\n</ul>"


def render_command_placeholder(command: WikiCommand) -> str:
    arg = f' data-arg="{html.escape(command.arg)}"' if command.arg else ""
    return f'<div class="wiki-command" data-name="{command.name}"{arg}></div>'


def render_html(page: ParsedPage, resolver, command_renderer=None) -> str:
    """Render a parsed page to an HTML fragment: the property table (when any
    properties exist) followed by body blocks and command output in source
    order.  Commands render as inert placeholders unless a renderer is given."""
    if command_renderer is None:
        command_renderer = render_command_placeholder
    parts: list[str] = []
    if page.properties:
        parts.append(render_property_table(page.properties, resolver))
    for node in page.flow:
        if isinstance(node, WikiCommand):
            parts.append(command_renderer(node))
        else:
            parts.append(render_block(node, resolver))
    return "\n".join(parts)
