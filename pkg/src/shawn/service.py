"""HTTP server: HTML view/edit flow, listings, RDF export, and the JSON API.

Every route is total over fuzzable page names: an unknown-but-valid name
renders the create-page flow, an invalid name is a 404, and nothing ever
reads or writes outside the store's data directory.  Mutation happens only
through the store's serialized ``save_page``.
"""

from __future__ import annotations

import html
import json
from pathlib import Path
from urllib.parse import parse_qs, quote

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, PlainTextResponse, RedirectResponse, Response
from fastapi.staticfiles import StaticFiles

from . import navigation
from .inference import MalformedQuery, all_inferred, clauses_from_json, conjunctive_query
from .markup import PageRef, edit_href, is_valid_page_name, page_href, parse_page
from .rdf_export import export, policy_from_store
from .store import PageStore, StorageFailure

DEFAULT_BASE_URI = "http://localhost:8080/wiki/"

NTRIPLES_MEDIA_TYPE = "application/n-triples"
TURTLE_MEDIA_TYPE = "text/turtle"

_STYLE = """
body { margin: 0; font: 15px/1.5 system-ui, sans-serif; color: #222; }
nav.gotobar { padding: .5em 1em; background: #3a5a78; }
nav.gotobar a { color: #fff; margin-right: 1em; text-decoration: none; }
nav.crumbs { padding: .4em 1em; background: #eef2f5; border-bottom: 1px solid #d8dee4; }
.layout { display: flex; gap: 2em; padding: 1em; align-items: flex-start; }
main.page { flex: 3; min-width: 0; }
aside.sidebar { flex: 1; border-left: 1px solid #d8dee4; padding-left: 1em; }
table.properties, table.triples { border-collapse: collapse; margin: .5em 0; }
table.properties td, table.triples td { border: 1px solid #d8dee4; padding: .2em .6em; }
a.create { color: #a33; }
textarea { width: 100%; font: 13px/1.4 monospace; }
.pageheader { display: flex; align-items: baseline; gap: 1em; }
"""


def _shell(title: str, body: str, include_script: bool = False) -> str:
    script = '\n<script type="module" src="/static/app.js"></script>' if include_script else ""
    return (
        "<!DOCTYPE html>\n"
        '<html lang="en">\n<head>\n<meta charset="utf-8">\n'
        f"<title>{html.escape(title)}</title>\n<style>{_STYLE}</style>\n</head>\n"
        f"<body>\n{body}{script}\n</body>\n</html>\n"
    )


def _edit_form(name: str, source: str) -> str:
    return (
        f'<form method="post" action="{html.escape(page_href(name))}" class="editform">\n'
        f'<textarea name="source" rows="20">{html.escape(source)}</textarea>\n'
        '<p><button type="submit">Save</button></p>\n</form>'
    )


def _object_json(obj):
    if isinstance(obj, PageRef):
        return {"type": "ref", "name": obj.name}
    return {"type": "literal", "lexical": obj.lexical, "datatype": obj.datatype}


def _triple_json(triple):
    return {
        "subject": triple.subject,
        "predicate": triple.predicate,
        "object": _object_json(triple.object),
    }


def graph_view(store: PageStore) -> dict:
    """Nodes and reference-valued edges (base and inferred); literal-valued
    triples surface as node attributes instead of edges."""
    base = store.all_triples()
    inferred = {it.triple for it in all_inferred(store)}
    node_ids = set(store.list_pages())
    edges = []
    literals: dict[str, list] = {}
    types: dict[str, set[str]] = {}
    for triple, is_inferred in [(t, False) for t in base] + [(t, True) for t in inferred]:
        if isinstance(triple.object, PageRef):
            node_ids.add(triple.subject)
            node_ids.add(triple.object.name)
            edges.append(
                {
                    "source": triple.subject,
                    "predicate": triple.predicate,
                    "target": triple.object.name,
                    "inferred": is_inferred,
                }
            )
            if triple.predicate in (navigation.TYPE_OF, navigation.INSTANCE_OF):
                types.setdefault(triple.subject, set()).add(triple.object.name)
        else:
            node_ids.add(triple.subject)
            literals.setdefault(triple.subject, []).append(
                {
                    "predicate": triple.predicate,
                    "value": triple.object.lexical,
                    "datatype": triple.object.datatype,
                }
            )
    nodes = [
        {
            "id": node,
            "types": sorted(types.get(node, ())),
            "literals": sorted(
                literals.get(node, []), key=lambda l: (l["predicate"], l["value"])
            ),
        }
        for node in sorted(node_ids)
    ]
    edges.sort(key=lambda e: (e["source"], e["predicate"], e["target"], e["inferred"]))
    return {"nodes": nodes, "edges": edges}


def prefers_turtle(accept: str) -> bool:
    """Turtle wins when the Accept header gives text/turtle at least the
    quality of any N-Triples alternative."""
    turtle_q = None
    ntriples_q = 0.0
    for part in accept.split(","):
        fields = part.strip().split(";")
        media = fields[0].strip().lower()
        q = 1.0
        for param in fields[1:]:
            key, _, value = param.strip().partition("=")
            if key == "q":
                try:
                    q = float(value)
                except ValueError:
                    q = 0.0
        if media == TURTLE_MEDIA_TYPE:
            turtle_q = max(turtle_q or 0.0, q)
        elif media in (NTRIPLES_MEDIA_TYPE, "application/n-quads", "text/plain"):
            ntriples_q = max(ntriples_q, q)
    return turtle_q is not None and turtle_q > 0 and turtle_q >= ntriples_q


def create_app(
    store: PageStore,
    *,
    base_uri: str = DEFAULT_BASE_URI,
    readonly: bool = False,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="shawn", docs_url=None, redoc_url=None)
    has_static = static_dir is not None and Path(static_dir).is_dir()
    if has_static:
        app.mount("/static", StaticFiles(directory=str(static_dir)), name="static")

    resolver = store.page_exists

    @app.exception_handler(StorageFailure)
    async def _storage_failure(_request, exc):
        return PlainTextResponse(f"storage failure: {exc}", status_code=500)

    def page_or_404(name: str) -> Response | None:
        if not is_valid_page_name(name):
            return HTMLResponse(
                _shell("invalid name", "<p>That is not a valid page name.</p>"),
                status_code=404,
            )
        return None

    @app.get("/")
    async def home():
        return RedirectResponse("/wiki/HomePage", status_code=303)

    @app.get("/wiki/{name}/edit", response_class=HTMLResponse)
    async def edit_page(name: str):
        invalid = page_or_404(name)
        if invalid:
            return invalid
        source = store.load_page(name) or ""
        body = (
            f'<nav class="gotobar">{_gotobar_html()}</nav>\n'
            f'<div class="layout"><main class="page">'
            f"<h1>Editing {html.escape(name)}</h1>\n{_edit_form(name, source)}"
            f"</main></div>"
        )
        return HTMLResponse(_shell(f"edit {name}", body))

    @app.get("/wiki/{name}", response_class=HTMLResponse)
    async def view_page(name: str):
        invalid = page_or_404(name)
        if invalid:
            return invalid
        return HTMLResponse(_shell(name, _view_body(name), include_script=has_static))

    @app.post("/wiki/{name}")
    async def save_page(name: str, request: Request):
        invalid = page_or_404(name)
        if invalid:
            return invalid
        if readonly:
            return PlainTextResponse("read-only wiki", status_code=403)
        raw = await request.body()
        try:
            form = parse_qs(raw.decode("utf-8"), keep_blank_values=True)
        except UnicodeDecodeError:
            return PlainTextResponse("body must be UTF-8", status_code=400)
        if "source" not in form:
            return PlainTextResponse("missing form field: source", status_code=400)
        store.save_page(name, form["source"][0])
        return RedirectResponse(page_href(name), status_code=303)

    @app.get("/all", response_class=HTMLResponse)
    async def all_pages():
        from .markup import render_page_link

        items = "".join(
            f"<li>{render_page_link(n, resolver)}</li>" for n in store.list_pages()
        )
        body = (
            f'<nav class="gotobar">{_gotobar_html()}</nav>\n'
            f'<div class="layout"><main class="page"><h1>All pages</h1>'
            f'<ul class="allpages">{items}</ul></main></div>'
        )
        return HTMLResponse(_shell("all pages", body))

    @app.get("/export.rdf")
    async def export_rdf(request: Request, inferred: str | None = None):
        include = inferred not in (None, "", "0")
        policy = policy_from_store(store, base_uri)
        if prefers_turtle(request.headers.get("accept", "")):
            document = export(store, policy, "turtle", include_inferred=include)
            media = TURTLE_MEDIA_TYPE
        else:
            document = export(store, policy, "ntriples", include_inferred=include)
            media = NTRIPLES_MEDIA_TYPE
        return Response(document.body, media_type=media)

    @app.get("/api/graph")
    async def api_graph():
        return graph_view(store)

    @app.get("/api/triples")
    async def api_triples(inferred: str | None = None):
        triples = set(store.all_triples())
        if inferred not in (None, "", "0"):
            triples |= {it.triple for it in all_inferred(store)}
        ordered = sorted(
            triples, key=lambda t: (t.subject, t.predicate, repr(t.object))
        )
        return [_triple_json(t) for t in ordered]

    @app.post("/api/query")
    async def api_query(request: Request):
        try:
            payload = json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError):
            return _malformed("body is not valid JSON")
        try:
            clauses = clauses_from_json(payload)
            matches = conjunctive_query(store, clauses)
        except MalformedQuery as exc:
            return _malformed(str(exc))
        return {"matches": sorted(matches)}

    def _malformed(reason: str):
        return Response(
            json.dumps({"error": "malformed-query", "reason": reason}),
            status_code=400,
            media_type="application/json",
        )

    def _gotobar_html() -> str:
        from .markup import render_page_link

        return " ".join(
            render_page_link(name, resolver) for name in navigation.goto_bar(store)
        )

    def _view_body(name: str) -> str:
        source = store.load_page(name)
        crumbs = navigation.render_breadcrumb_html(
            store, navigation.breadcrumbs(store, name)
        )
        gotobar = f'<nav class="gotobar">{_gotobar_html()}</nav>'
        if source is None:
            main = (
                f"<h1>Create {html.escape(name)}</h1>\n"
                "<p>This page does not exist yet. Write it:</p>\n"
                + _edit_form(name, "")
            )
        else:
            parsed = parse_page(name, source)
            main = (
                f'<div class="pageheader"><h1>{html.escape(name)}</h1>'
                f'<a class="editlink" href="{html.escape(edit_href(name))}">edit</a></div>\n'
                + navigation.expand_commands(store, parsed, name)
            )
        sidebar = navigation.sidebar_html(store, name)
        return (
            f"{gotobar}\n<nav class=\"crumbs\">{crumbs}</nav>\n"
            f'<div class="layout">\n<main class="page" data-page="{html.escape(name, quote=True)}">\n'
            f"{main}\n</main>\n"
            f'<aside class="sidebar">\n{sidebar}\n</aside>\n</div>'
        )

    return app


def open_wiki(root: str | Path, base_uri: str = DEFAULT_BASE_URI) -> PageStore:
    """Open (or create) a wiki directory with the RDF export hook installed."""
    from .rdf_export import install_export_hook, policy_from_store, write_export_files

    store = PageStore(root)
    install_export_hook(store, base_uri)
    try:
        write_export_files(store, policy_from_store(store, base_uri), store.root)
    except OSError:
        pass
    return store
