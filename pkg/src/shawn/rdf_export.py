"""URI minting and N-Triples / Turtle serialization of the triple set.

Exports are deterministic: statements are sorted by subject, predicate,
object, so identical stores produce byte-identical documents.  The canonical
files under the data directory are refreshed by a save hook on every page
save.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping
from urllib.parse import quote

from .inference import all_inferred
from .markup import ObjectValue, PageRef, TypedLiteral
from .store import PageStore, Triple, TriplePattern

XSD_DATATYPES = {
    "date": "http://www.w3.org/2001/XMLSchema#date",
    "integer": "http://www.w3.org/2001/XMLSchema#integer",
    "decimal": "http://www.w3.org/2001/XMLSchema#decimal",
}

URI_MAP_PAGE = "UriMap"
EXPORT_BASENAME = "export.nt"
EXPORT_TURTLE_BASENAME = "export.ttl"
EXPORT_INFERRED_BASENAME = "export.inferred.nt"

# scheme://rest with nothing a serialized IRI cannot carry
_ABSOLUTE_URI_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*://\S+")
_IRI_UNSAFE_RE = re.compile(r'[\x00-\x20<>"{}|^`\\]')


class SerializationFailure(Exception):
    """An alias target cannot be written as an IRI."""


def looks_like_absolute_uri(text: str) -> bool:
    return _ABSOLUTE_URI_RE.fullmatch(text) is not None


@dataclass(frozen=True)
class UriPolicy:
    """Base URI plus explicit per-page overrides."""

    base: str
    alias_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not looks_like_absolute_uri(self.base) or not self.base.endswith("/"):
            raise ValueError(f"base must be an absolute URI ending in '/': {self.base!r}")
        object.__setattr__(self, "alias_map", MappingProxyType(dict(self.alias_map)))


@dataclass(frozen=True)
class ExportDocument:
    format: str
    body: str
    triple_count: int
    includes_inferred: bool


def mint_uri(page: str, policy: UriPolicy) -> str:
    """Alias when declared, otherwise base + percent-encoded page name
    (injective over distinct names for a fixed policy)."""
    alias = policy.alias_map.get(page)
    if alias is not None:
        if not looks_like_absolute_uri(alias) or _IRI_UNSAFE_RE.search(alias):
            raise SerializationFailure(f"alias for {page!r} is not a valid URI: {alias!r}")
        return alias
    return policy.base + quote(page, safe="")


def _escape_literal(lexical: str) -> str:
    out = []
    for ch in lexical:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _object_term(obj: ObjectValue, policy: UriPolicy) -> str:
    if isinstance(obj, PageRef):
        return f"<{mint_uri(obj.name, policy)}>"
    literal = f'"{_escape_literal(obj.lexical)}"'
    datatype = XSD_DATATYPES.get(obj.datatype)
    if datatype is not None:
        literal += f"^^<{datatype}>"
    return literal


def _sort_key(triple: Triple):
    if isinstance(triple.object, PageRef):
        okey = (0, triple.object.name, "")
    else:
        okey = (1, triple.object.datatype, triple.object.lexical)
    return (triple.subject, triple.predicate, okey)


def _gather(store: PageStore, include_inferred: bool) -> list[Triple]:
    triples = set(store.all_triples())
    if include_inferred:
        triples |= {it.triple for it in all_inferred(store)}
    return sorted(triples, key=_sort_key)


def export(
    store: PageStore,
    policy: UriPolicy,
    format: str = "ntriples",
    include_inferred: bool = False,
) -> ExportDocument:
    """Serialize the store's triples (optionally plus inferred ones)."""
    if format not in ("ntriples", "turtle"):
        raise ValueError(f"unknown export format: {format!r}")
    triples = _gather(store, include_inferred)
    if format == "ntriples":
        lines = [
            f"<{mint_uri(t.subject, policy)}> <{mint_uri(t.predicate, policy)}> "
            f"{_object_term(t.object, policy)} ."
            for t in triples
        ]
        body = "".join(line + "\n" for line in lines)
    else:
        body = _turtle_body(triples, policy)
    return ExportDocument(format, body, len(triples), include_inferred)


def _turtle_body(triples: list[Triple], policy: UriPolicy) -> str:
    chunks: list[str] = []
    index = 0
    while index < len(triples):
        subject = triples[index].subject
        group = []
        while index < len(triples) and triples[index].subject == subject:
            t = triples[index]
            group.append(f"<{mint_uri(t.predicate, policy)}> {_object_term(t.object, policy)}")
            index += 1
        statements = " ;\n    ".join(group)
        chunks.append(f"<{mint_uri(subject, policy)}>\n    {statements} .\n")
    return "\n".join(chunks)


def policy_from_store(store: PageStore, base: str) -> UriPolicy:
    """Read the alias map from the UriMap page: each property line there maps
    the predicate name to the URI in its value, when the value is one."""
    aliases: dict[str, str] = {}
    for t in sorted(store.query(TriplePattern(subject=URI_MAP_PAGE)), key=_sort_key):
        obj = t.object
        if isinstance(obj, TypedLiteral) and obj.datatype == "string":
            if looks_like_absolute_uri(obj.lexical):
                aliases[t.predicate] = obj.lexical
    return UriPolicy(base, aliases)


def write_export_files(store: PageStore, policy: UriPolicy, directory: str | Path) -> None:
    directory = Path(directory)
    targets = (
        (EXPORT_BASENAME, "ntriples", False),
        (EXPORT_TURTLE_BASENAME, "turtle", False),
        (EXPORT_INFERRED_BASENAME, "ntriples", True),
    )
    for basename, fmt, inferred in targets:
        document = export(store, policy, fmt, include_inferred=inferred)
        (directory / basename).write_bytes(document.body.encode("utf-8"))


def install_export_hook(store: PageStore, base: str, directory: str | Path | None = None) -> None:
    """Regenerate the canonical export files after every committed save.

    Failures propagate to the store's hook runner, which logs them without
    failing the save.
    """
    target = Path(directory) if directory is not None else store.root

    def hook(_page: str) -> None:
        write_export_files(store, policy_from_store(store, base), target)

    store.add_save_hook(hook)
