"""Deduction over the stored triples, and typed conjunctive queries.

Two rules run on demand and never write back into page files:

* transitivity: a predicate whose own page carries ``IsTransitive: Yes``
  closes chains of its reference-valued triples,
* subproperty: ``IsA`` lines on predicate pages lift every triple of a
  predicate to all of its ancestors.

Conjunctive queries filter subjects over base plus inferred triples with
typed comparisons; the clause grammar is documented in ``docs/query.md``.
"""

from __future__ import annotations

import datetime
import re
from collections import deque
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from .markup import (
    FREETEXT_RE,
    ObjectValue,
    PageRef,
    TypedLiteral,
    WIKIWORD_RE,
    classify_value,
    normalize_page_name,
)
from .store import PageStore, Triple, TriplePattern

# The transitivity flag must itself be a WikiWord to parse as a property
# line, hence IsTransitive rather than a bare Transitive.
TRANSITIVE_FLAG = "IsTransitive"
SUBPROPERTY_PREDICATE = "IsA"
ISA_DEPTH_CAP = 20

RULE_TRANSITIVITY = "transitivity"
RULE_SUBPROPERTY = "subproperty"


class MalformedQuery(Exception):
    """Raised for an empty clause list, an unknown operator, or a clause
    expression that does not parse."""


@dataclass(frozen=True)
class PredicateBehaviour:
    predicate: str
    transitive: bool
    parents: frozenset[str]


@dataclass(frozen=True)
class InferredTriple:
    triple: Triple
    rule: str
    depth: int


def _surface_text(obj: ObjectValue) -> str:
    return obj.name if isinstance(obj, PageRef) else obj.lexical


def behaviour_of(store: PageStore, predicate: str) -> PredicateBehaviour:
    """Behaviour declared on the predicate's own page."""
    # all-caps spellings like YES parse as page references, so check the
    # surface text of either object kind
    transitive = any(
        _surface_text(t.object).lower() == "yes"
        for t in store.query(TriplePattern(subject=predicate, predicate=TRANSITIVE_FLAG))
    )
    parents = frozenset(
        t.object.name
        for t in store.query(
            TriplePattern(subject=predicate, predicate=SUBPROPERTY_PREDICATE)
        )
        if isinstance(t.object, PageRef)
    )
    return PredicateBehaviour(predicate, transitive, parents)


def declared_transitive_predicates(store: PageStore) -> set[str]:
    subjects = {t.subject for t in store.predicate_usage(TRANSITIVE_FLAG)}
    return {s for s in subjects if behaviour_of(store, s).transitive}


# -- transitivity --


def closure_pairs(edges: dict[str, set[str]]) -> dict[tuple[str, str], int]:
    """Shortest-path reachability of a digraph, minus its own edges.

    Returns (a, c) -> depth for every pair connected by a path of length two
    or more that is not already a direct edge; (a, a) pairs come from cycles.
    """
    inferred: dict[tuple[str, str], int] = {}
    nodes = set(edges)
    for targets in edges.values():
        nodes |= targets
    for start in nodes:
        distance = {start: 0}
        shortest_return: int | None = None
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in edges.get(node, ()):
                if nxt == start:
                    candidate = distance[node] + 1
                    if shortest_return is None or candidate < shortest_return:
                        shortest_return = candidate
                    continue
                if nxt not in distance:
                    distance[nxt] = distance[node] + 1
                    queue.append(nxt)
        direct = edges.get(start, set())
        for target, depth in distance.items():
            if depth >= 2 and target not in direct:
                inferred[(start, target)] = depth
        if shortest_return is not None and shortest_return >= 2 and start not in direct:
            inferred[(start, start)] = shortest_return
    return inferred


def closure(store: PageStore, predicate: str) -> set[InferredTriple]:
    """Transitive closure of one declared-transitive predicate over its
    reference-valued base triples; depth is the shortest path length."""
    if not behaviour_of(store, predicate).transitive:
        return set()
    edges: dict[str, set[str]] = {}
    for t in store.predicate_usage(predicate):
        if isinstance(t.object, PageRef):
            edges.setdefault(t.subject, set()).add(t.object.name)
    return {
        InferredTriple(Triple(a, predicate, PageRef(c)), RULE_TRANSITIVITY, depth)
        for (a, c), depth in closure_pairs(edges).items()
    }


# -- subproperty lift --


def _isa_parents(store: PageStore) -> dict[str, set[str]]:
    parents: dict[str, set[str]] = {}
    for t in store.predicate_usage(SUBPROPERTY_PREDICATE):
        if isinstance(t.object, PageRef):
            parents.setdefault(t.subject, set()).add(t.object.name)
    return parents


def _ancestors(parents: dict[str, set[str]], predicate: str) -> dict[str, int]:
    """IsA ancestors with their distance, cycle-safe, capped; the predicate
    itself is never its own ancestor."""
    found: dict[str, int] = {}
    queue = deque([(predicate, 0)])
    visited = {predicate}
    while queue:
        node, depth = queue.popleft()
        if depth >= ISA_DEPTH_CAP:
            continue
        for parent in sorted(parents.get(node, ())):
            if parent in visited:
                continue
            visited.add(parent)
            found[parent] = depth + 1
            queue.append((parent, depth + 1))
    return found


def subproperty_lift(store: PageStore) -> set[InferredTriple]:
    """Lift every base or transitively-inferred triple along IsA ancestry,
    skipping statements that already exist."""
    base = store.all_triples()
    transitive = {
        it.triple
        for predicate in declared_transitive_predicates(store)
        for it in closure(store, predicate)
    }
    facts = base | transitive
    parents = _isa_parents(store)
    ancestry = {p: _ancestors(parents, p) for p in parents}
    lifted: dict[Triple, int] = {}
    for t in facts:
        for ancestor, depth in ancestry.get(t.predicate, {}).items():
            candidate = Triple(t.subject, ancestor, t.object)
            if candidate in facts:
                continue
            if candidate not in lifted or depth < lifted[candidate]:
                lifted[candidate] = depth
    return {
        InferredTriple(t, RULE_SUBPROPERTY, depth) for t, depth in lifted.items()
    }


def all_inferred(store: PageStore) -> set[InferredTriple]:
    inferred = {
        it
        for predicate in declared_transitive_predicates(store)
        for it in closure(store, predicate)
    }
    return inferred | subproperty_lift(store)


def fact_set(store: PageStore) -> set[Triple]:
    """Base plus inferred triples."""
    return store.all_triples() | {it.triple for it in all_inferred(store)}


# -- conjunctive queries --


@dataclass(frozen=True)
class PropertyOf:
    """Clause value resolved at query time to the objects the given page
    carries for the given predicate."""

    page: str
    predicate: str


ClauseValue = ObjectValue | PropertyOf | None  # None = any value (existence)

OPERATORS = ("=", "!=", "<", ">", "same-year")
_OP_ALIASES = {"≠": "!="}


@dataclass(frozen=True)
class Clause:
    predicate: str
    op: str
    value: ClauseValue


def _typed(literal: TypedLiteral):
    if literal.datatype == "date":
        return datetime.date.fromisoformat(literal.lexical)
    if literal.datatype == "integer":
        return int(literal.lexical)
    if literal.datatype == "decimal":
        return Decimal(literal.lexical)
    return literal.lexical


def compare(obj: ObjectValue, op: str, value: ObjectValue) -> bool:
    """Typed comparison; anything cross-datatype (or undefined, like ordering
    page references) fails rather than coercing."""
    if isinstance(obj, PageRef) or isinstance(value, PageRef):
        if not (isinstance(obj, PageRef) and isinstance(value, PageRef)):
            return False
        if op == "=":
            return obj.name == value.name
        if op == "!=":
            return obj.name != value.name
        return False
    if obj.datatype != value.datatype:
        return False
    if op == "same-year":
        if obj.datatype != "date":
            return False
        try:
            return _typed(obj).year == _typed(value).year
        except ValueError:
            return False
    try:
        left, right = _typed(obj), _typed(value)
    except (ValueError, InvalidOperation):
        return False
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    if op == "<":
        return left < right
    return left > right


def _normalize_clause(clause: Clause) -> Clause:
    op = _OP_ALIASES.get(clause.op, clause.op)
    if op not in OPERATORS:
        raise MalformedQuery(f"unknown operator: {clause.op!r}")
    if clause.value is None and op != "=":
        raise MalformedQuery("a value wildcard only combines with '='")
    return Clause(clause.predicate, op, clause.value)


def _clause_values(facts: set[Triple], value: ClauseValue) -> list[ObjectValue] | None:
    if value is None:
        return None
    if isinstance(value, PropertyOf):
        return [
            t.object
            for t in facts
            if t.subject == value.page and t.predicate == value.predicate
        ]
    return [value]


def conjunctive_query(store: PageStore, clauses: list[Clause]) -> set[str]:
    """Subjects satisfying every clause over base plus inferred triples."""
    if not clauses:
        raise MalformedQuery("empty clause list")
    normalized = [_normalize_clause(c) for c in clauses]
    facts = fact_set(store)
    result: set[str] | None = None
    for clause in normalized:
        values = _clause_values(facts, clause.value)
        matching: set[str] = set()
        for t in facts:
            if t.predicate != clause.predicate:
                continue
            if values is None:
                matching.add(t.subject)
            elif any(compare(t.object, clause.op, v) for v in values):
                matching.add(t.subject)
        result = matching if result is None else result & matching
        if not result:
            return set()
    return result or set()


def interest_match(store: PageStore, person: str) -> set[str]:
    """People sharing at least one InterestsIn object with ``person``."""
    facts = fact_set(store)
    interests = {
        t.object for t in facts if t.subject == person and t.predicate == "InterestsIn"
    }
    matches: set[str] = set()
    for interest in interests:
        matches |= conjunctive_query(store, [Clause("InterestsIn", "=", interest)])
    matches.discard(person)
    return matches


# -- clause deserialization --

_DEREF_RE = re.compile(rf"@(?:({WIKIWORD_RE.pattern})|{FREETEXT_RE.pattern})\.(\w+)$")


def _parse_clause_value(text: str) -> ClauseValue:
    text = text.strip()
    if not text:
        raise MalformedQuery("missing clause value")
    if text == "?":
        return None
    deref = _DEREF_RE.fullmatch(text)
    if deref:
        page = deref.group(1) or normalize_page_name(deref.group(2) or "")
        if page is None:
            raise MalformedQuery(f"bad page name in {text!r}")
        return PropertyOf(page, deref.group(3))
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return TypedLiteral(text[1:-1], "string")
    return classify_value(text)


def parse_clause_expression(expression: str) -> list[Clause]:
    """Parse the textual clause grammar: semicolon-separated
    ``Predicate OP value`` clauses (see docs/query.md)."""
    clauses: list[Clause] = []
    for raw in expression.split(";"):
        raw = raw.strip()
        if not raw:
            continue
        parts = raw.split(None, 2)
        if len(parts) < 3:
            raise MalformedQuery(f"clause needs predicate, operator, value: {raw!r}")
        predicate, op, value_text = parts
        clauses.append(Clause(predicate, op, _parse_clause_value(value_text)))
    if not clauses:
        raise MalformedQuery("empty clause list")
    return [_normalize_clause(c) for c in clauses]


def clause_from_json(data) -> Clause:
    if not isinstance(data, dict):
        raise MalformedQuery("clause must be an object")
    predicate = data.get("predicate")
    op = data.get("op")
    if not isinstance(predicate, str) or not isinstance(op, str):
        raise MalformedQuery("clause needs string 'predicate' and 'op'")
    value = data.get("value")
    return Clause(predicate, op, _clause_value_from_json(value))


def _clause_value_from_json(value) -> ClauseValue:
    if value is None:
        return None
    if isinstance(value, str):
        return _parse_clause_value(value)
    if not isinstance(value, dict):
        raise MalformedQuery("clause value must be null, a string, or an object")
    kind = value.get("type")
    if kind == "any":
        return None
    if kind == "ref":
        name = value.get("name")
        if not isinstance(name, str) or normalize_page_name(name) is None:
            raise MalformedQuery("ref value needs a valid 'name'")
        return PageRef(name)
    if kind == "literal":
        lexical = value.get("lexical")
        datatype = value.get("datatype", "string")
        if not isinstance(lexical, str):
            raise MalformedQuery("literal value needs string 'lexical'")
        if datatype not in ("string", "integer", "decimal", "date"):
            raise MalformedQuery(f"unknown datatype: {datatype!r}")
        return TypedLiteral(lexical, datatype)
    if kind == "property-of":
        page = value.get("page")
        predicate = value.get("predicate")
        if not isinstance(page, str) or not isinstance(predicate, str):
            raise MalformedQuery("property-of needs 'page' and 'predicate'")
        return PropertyOf(page, predicate)
    raise MalformedQuery(f"unknown value type: {kind!r}")


def clauses_from_json(data) -> list[Clause]:
    if isinstance(data, dict):
        data = data.get("clauses")
    if not isinstance(data, list) or not data:
        raise MalformedQuery("expected a non-empty 'clauses' array")
    return [_normalize_clause(clause_from_json(item)) for item in data]
