#!/usr/bin/env python3
"""End-to-end walkthrough on a throwaway wiki.

Seeds the demo pages, then shows each layer doing its job: triples from
property lines, forwardlinks, breadcrumbs, inference, queries, and the RDF
export. Run: python3 scripts/demo.py
"""

import tempfile
from pathlib import Path

from shawn.fixture import seed_demo
from shawn.inference import (
    all_inferred,
    conjunctive_query,
    interest_match,
    parse_clause_expression,
)
from shawn.navigation import breadcrumbs, forwardlinks_view
from shawn.service import open_wiki
from shawn.store import TriplePattern


def main() -> None:
    root = Path(tempfile.mkdtemp(prefix="shawn-demo-"))
    store = open_wiki(root / "wiki")
    seed_demo(store)
    print(f"wiki at {root}/wiki with {len(store.list_pages())} pages\n")

    print("triples on the Shakespeare page:")
    for t in sorted(store.query(TriplePattern(subject="Shakespeare")), key=str):
        print(f"  ({t.subject}, {t.predicate}, {t.object})")

    print("\nforwardlinks of Hamlet (who points here, and how):")
    for source, predicate in forwardlinks_view(store, "Hamlet"):
        print(f"  {source} --{predicate}-->")

    print("\nbreadcrumbs:")
    for page in ("JohnDoe", "Leipzig", "KnowsOf"):
        print(f"  {page}: {breadcrumbs(store, page).render_text()}")

    print("\ninferred triples (transitivity + subproperty):")
    for inferred in sorted(all_inferred(store), key=lambda i: str(i.triple)):
        t = inferred.triple
        print(f"  ({t.subject}, {t.predicate}, {t.object})  [{inferred.rule}, depth {inferred.depth}]")

    print("\nwho lives in Leipzig?")
    expression = "LivesIn = [[Leipzig]]"
    print(f"  {expression!r} -> {sorted(conjunctive_query(store, parse_clause_expression(expression)))}")

    print("\npeople sharing an interest with JohnDoe:")
    print(f"  {sorted(interest_match(store, 'JohnDoe'))}")

    print("\nwho was born the same year as Shakespeare?")
    expression = (
        "DateOfBirth same-year @[[Shakespeare]].DateOfBirth ; "
        "DateOfBirth != @[[Shakespeare]].DateOfBirth"
    )
    print(f"  -> {sorted(conjunctive_query(store, parse_clause_expression(expression)))}")

    export_path = root / "wiki" / "export.nt"
    lines = export_path.read_text().splitlines()
    print(f"\nRDF export ({len(lines)} statements in {export_path}), a taste:")
    for line in lines[:3]:
        print(f"  {line}")


if __name__ == "__main__":
    main()
