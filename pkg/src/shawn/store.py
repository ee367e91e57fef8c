"""Page persistence and the in-memory triple index.

Pages live as one UTF-8 plain text file each under ``<root>/pages/``
(percent-encoded page name plus ``.txt``).  The index is never persisted:
it is rebuilt by a full scan at startup and kept consistent incrementally
on every save.  Saves are serialized store-wide; reads never observe a
partially applied save.
"""

from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import quote, unquote

from .markup import ObjectValue, PageRef, is_valid_page_name, parse_page

log = logging.getLogger(__name__)


class StorageFailure(Exception):
    """Disk-level failure; the triple index is left unchanged."""


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: ObjectValue


@dataclass(frozen=True)
class TriplePattern:
    """Match template for queries; ``None`` fields are wildcards."""

    subject: str | None = None
    predicate: str | None = None
    object: ObjectValue | None = None

    def matches(self, triple: Triple) -> bool:
        if self.subject is not None and triple.subject != self.subject:
            return False
        if self.predicate is not None and triple.predicate != self.predicate:
            return False
        if self.object is not None and triple.object != self.object:
            return False
        return True


@dataclass(frozen=True)
class SaveReceipt:
    triples_added: int
    triples_removed: int


def triples_of(name: str, source: str) -> set[Triple]:
    """The triple set a page contributes: one per property pair, deduplicated."""
    parsed = parse_page(name, source)
    return {Triple(name, pair.predicate, pair.object) for pair in parsed.properties}


def object_key(obj: ObjectValue) -> tuple:
    """Index key for the object position; literals bucket by (datatype, lexical)."""
    if isinstance(obj, PageRef):
        return ("ref", obj.name)
    return ("lit", obj.datatype, obj.lexical)


class PageStore:
    """File-backed page store with subject/predicate/object access paths."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.pages_dir = self.root / "pages"
        try:
            self.pages_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageFailure(f"cannot create page directory: {exc}") from exc
        self._lock = threading.RLock()
        self._sources: dict[str, str] = {}
        self._by_subject: dict[str, set[Triple]] = {}
        self._by_predicate: dict[str, set[Triple]] = {}
        self._by_object: dict[tuple, set[Triple]] = {}
        self._save_hooks: list = []
        self.rescan()

    # -- filesystem layout --

    def page_path(self, name: str) -> Path:
        if not is_valid_page_name(name):
            raise StorageFailure(f"invalid page name: {name!r}")
        path = self.pages_dir / (quote(name, safe="") + ".txt")
        # percent-encoding leaves no separators, but never trust that silently
        if path.parent != self.pages_dir:
            raise StorageFailure(f"page name escapes the data directory: {name!r}")
        return path

    def rescan(self) -> None:
        """Rebuild the whole index from the page files."""
        with self._lock:
            self._sources.clear()
            self._by_subject.clear()
            self._by_predicate.clear()
            self._by_object.clear()
            try:
                paths = sorted(self.pages_dir.glob("*.txt"))
            except OSError as exc:
                raise StorageFailure(f"cannot list pages: {exc}") from exc
            for path in paths:
                name = unquote(path.stem)
                if not is_valid_page_name(name):
                    log.warning("skipping page file with invalid name: %s", path)
                    continue
                try:
                    source = path.read_bytes().decode("utf-8")
                except (OSError, UnicodeDecodeError) as exc:
                    raise StorageFailure(f"cannot read {path}: {exc}") from exc
                self._sources[name] = source
                self._index_subject(name, triples_of(name, source))

    # -- index bookkeeping --

    def _index_subject(self, name: str, new: set[Triple]) -> None:
        old = self._by_subject.get(name, set())
        for triple in old - new:
            self._by_predicate[triple.predicate].discard(triple)
            self._by_object[object_key(triple.object)].discard(triple)
        if new:
            self._by_subject[name] = set(new)
        else:
            self._by_subject.pop(name, None)
        for triple in new - old:
            self._by_predicate.setdefault(triple.predicate, set()).add(triple)
            self._by_object.setdefault(object_key(triple.object), set()).add(triple)

    # -- operations --

    def save_page(self, name: str, source: str) -> SaveReceipt:
        """Atomically replace the page file, then swap the subject's triples.

        Parse-then-commit: a disk failure raises StorageFailure with the
        index untouched.  Save hooks run inside the writer serialization;
        their failures are logged, never raised.
        """
        with self._lock:
            new = triples_of(name, source)
            path = self.page_path(name)
            tmp = path.with_name(path.name + ".tmp")
            try:
                tmp.write_bytes(source.encode("utf-8"))
                os.replace(tmp, path)
            except OSError as exc:
                raise StorageFailure(f"cannot write {path}: {exc}") from exc
            old = self._by_subject.get(name, set())
            receipt = SaveReceipt(len(new - old), len(old - new))
            self._index_subject(name, new)
            self._sources[name] = source
            for hook in self._save_hooks:
                try:
                    hook(name)
                except Exception:
                    log.warning("save hook failed for %r", name, exc_info=True)
            return receipt

    def load_page(self, name: str) -> str | None:
        """Exact saved source, or None for never-saved pages."""
        with self._lock:
            return self._sources.get(name)

    def page_exists(self, name: str) -> bool:
        with self._lock:
            return name in self._sources

    def list_pages(self) -> list[str]:
        with self._lock:
            return sorted(self._sources)

    def all_triples(self) -> set[Triple]:
        with self._lock:
            out: set[Triple] = set()
            for triples in self._by_subject.values():
                out |= triples
            return out

    def query(self, pattern: TriplePattern) -> set[Triple]:
        """Stored triples matching every bound field of the pattern."""
        with self._lock:
            if pattern.subject is not None:
                candidates = self._by_subject.get(pattern.subject, set())
            elif pattern.object is not None:
                candidates = self._by_object.get(object_key(pattern.object), set())
            elif pattern.predicate is not None:
                candidates = self._by_predicate.get(pattern.predicate, set())
            else:
                return self.all_triples()
            return {t for t in candidates if pattern.matches(t)}

    def forwardlink_triples(self, page: str) -> set[Triple]:
        """Triples that point at ``page``: its object position holds the page
        as a reference (literals spelling the same name do not count)."""
        return self.query(TriplePattern(object=PageRef(page)))

    def predicate_usage(self, pred: str) -> set[Triple]:
        return self.query(TriplePattern(predicate=pred))

    def add_save_hook(self, hook) -> None:
        """Register a callable(page_name) to run after each committed save."""
        self._save_hooks.append(hook)
