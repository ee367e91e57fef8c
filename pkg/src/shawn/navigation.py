"""Navigation aids computed from the triple index.

Breadcrumbs answer "where am I" by walking the TypeOf ancestry (with an
InstanceOf tail), forwardlinks answer "where can I go" by listing the pages
whose properties point here.  ``expand_commands`` turns the wiki commands of
any page into HTML, always evaluated against the *viewed* page, which is what
makes a single SideBar page work for every page on the wiki.
"""

from __future__ import annotations

import html
from dataclasses import dataclass

from .markup import (
    PageRef,
    ParsedPage,
    WikiCommand,
    extract_links_ordered,
    parse_page,
    render_html,
    render_object,
    render_page_link,
    render_property_table,
)
from .store import PageStore, Triple, TriplePattern

TYPE_OF = "TypeOf"
INSTANCE_OF = "InstanceOf"
BREADCRUMB_DEPTH_CAP = 20
DEFAULT_GOTO_BAR = ("HomePage", "AllPages")
# A missing SideBar still gives every page its forwardlinks and siblings.
DEFAULT_SIDEBAR_SOURCE = "{{forwardlinks}}\n\n{{sametype}}\n"


@dataclass(frozen=True)
class BreadcrumbPath:
    """Root-first TypeOf chain, optionally ending in an instance tail
    rendered with the colon notation."""

    chain: tuple[str, ...]
    instance_tail: str | None = None

    def render_text(self) -> str:
        text = " > ".join(self.chain)
        if self.instance_tail is not None:
            text += f" : {self.instance_tail}"
        return text


def _ref_objects(store: PageStore, subject: str, predicate: str) -> list[str]:
    triples = store.query(TriplePattern(subject=subject, predicate=predicate))
    return sorted(t.object.name for t in triples if isinstance(t.object, PageRef))


def _ancestor_chain(store: PageStore, start: str) -> tuple[str, ...]:
    """Walk TypeOf upward from ``start``, always following the
    lexicographically smallest parent; stop on a missing parent, a repeat,
    or the depth cap."""
    upward = [start]
    visited = {start}
    current = start
    while len(upward) < BREADCRUMB_DEPTH_CAP:
        parents = _ref_objects(store, current, TYPE_OF)
        if not parents:
            break
        parent = parents[0]
        if parent in visited:
            break
        upward.append(parent)
        visited.add(parent)
        current = parent
    return tuple(reversed(upward))


def breadcrumbs(store: PageStore, page: str) -> BreadcrumbPath:
    classes = _ref_objects(store, page, INSTANCE_OF)
    if classes:
        return BreadcrumbPath(_ancestor_chain(store, classes[0]), instance_tail=page)
    return BreadcrumbPath(_ancestor_chain(store, page))


def forwardlinks_view(store: PageStore, page: str) -> list[tuple[str, str]]:
    """(source, predicate) pairs of all triples pointing at ``page``."""
    pairs = {(t.subject, t.predicate) for t in store.forwardlink_triples(page)}
    return sorted(pairs)


def _type_objects(store: PageStore, page: str):
    objects = set()
    for predicate in (TYPE_OF, INSTANCE_OF):
        for t in store.query(TriplePattern(subject=page, predicate=predicate)):
            objects.add(t.object)
    return objects


def same_type(store: PageStore, page: str) -> set[str]:
    """Pages sharing at least one TypeOf/InstanceOf object with ``page``."""
    siblings: set[str] = set()
    for obj in _type_objects(store, page):
        for predicate in (TYPE_OF, INSTANCE_OF):
            for t in store.query(TriplePattern(predicate=predicate, object=obj)):
                siblings.add(t.subject)
    siblings.discard(page)
    return siblings


@dataclass(frozen=True)
class NavContext:
    """Everything the chrome around a page needs, in one snapshot."""

    current: str
    forwardlinks: frozenset[Triple]
    same_type: frozenset[str]
    goto_links: tuple[str, ...]


def nav_context(store: PageStore, current: str) -> NavContext:
    return NavContext(
        current=current,
        forwardlinks=frozenset(store.forwardlink_triples(current)),
        same_type=frozenset(same_type(store, current)),
        goto_links=tuple(goto_bar(store)),
    )


def goto_bar(store: PageStore) -> list[str]:
    """Links of the GotoBar page in source order (first occurrence kept);
    a fixed default when the page is missing."""
    source = store.load_page("GotoBar")
    if source is None:
        return list(DEFAULT_GOTO_BAR)
    seen: set[str] = set()
    ordered: list[str] = []
    for name in extract_links_ordered(source):
        if name not in seen:
            seen.add(name)
            ordered.append(name)
    return ordered


# -- command expansion --


def render_breadcrumb_html(store: PageStore, path: BreadcrumbPath) -> str:
    resolver = store.page_exists
    parts = " &gt; ".join(render_page_link(name, resolver) for name in path.chain)
    if path.instance_tail is not None:
        parts += " : " + render_page_link(path.instance_tail, resolver)
    return f'<span class="breadcrumbs">{parts}</span>'


def _render_page_list(store: PageStore, names, css_class: str) -> str:
    resolver = store.page_exists
    items = "".join(f"<li>{render_page_link(n, resolver)}</li>" for n in names)
    return f'<ul class="{css_class}">{items}</ul>'


def _render_triple_rows(store: PageStore, triples: set[Triple]) -> str:
    resolver = store.page_exists
    rows = []
    for t in sorted(triples, key=lambda t: (t.subject, t.predicate, repr(t.object))):
        rows.append(
            "<tr>"
            f'<td class="subject">{render_page_link(t.subject, resolver)}</td>'
            f'<td class="predicate">{render_page_link(t.predicate, resolver)}</td>'
            f'<td class="object">{render_object(t.object, resolver)}</td>'
            "</tr>"
        )
    return '<table class="triples">' + "".join(rows) + "</table>"


def render_command(store: PageStore, command: WikiCommand, current: str) -> str:
    """HTML for one wiki command evaluated at the ``current`` page."""
    resolver = store.page_exists
    if command.name == "forwardlinks":
        entries = forwardlinks_view(store, current)
        items = "".join(
            "<li>"
            f"{render_page_link(source, resolver)} "
            f'<span class="via">{render_page_link(predicate, resolver)}</span>'
            "</li>"
            for source, predicate in entries
        )
        return f'<ul class="forwardlinks">{items}</ul>'
    if command.name == "breadcrumbs":
        return render_breadcrumb_html(store, breadcrumbs(store, current))
    if command.name == "triples":
        predicate = command.arg or current
        return _render_triple_rows(store, store.predicate_usage(predicate))
    if command.name == "allpages":
        return _render_page_list(store, store.list_pages(), "allpages")
    if command.name == "sametype":
        return _render_page_list(store, sorted(same_type(store, current)), "sametype")
    if command.name == "properties":
        source = store.load_page(current)
        parsed = parse_page(current, source or "")
        if not parsed.properties:
            return '<table class="properties">\n\n</table>'
        return render_property_table(parsed.properties, resolver)
    # unknown names never reach here (the parser keeps them as plain text)
    return html.escape("{{" + command.name + "}}")


def expand_commands(store: PageStore, host: ParsedPage, current: str) -> str:
    """Render ``host`` with every wiki command replaced by its output,
    evaluated for the ``current`` page."""
    return render_html(
        host,
        store.page_exists,
        command_renderer=lambda command: render_command(store, command, current),
    )


def sidebar_html(store: PageStore, current: str) -> str:
    source = store.load_page("SideBar")
    if source is None:
        source = DEFAULT_SIDEBAR_SOURCE
    return expand_commands(store, parse_page("SideBar", source), current)
