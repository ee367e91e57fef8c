from __future__ import annotations

import random
import string

import pytest

from shawn.fixture import seed_demo
from shawn.store import PageStore

# --- randomized input generators (seeded, deterministic) ---------------------

_WIKI_PREFIXES = ["Home", "Side", "Goto", "Wiki", "Page", "Note", "Team", "Data"]
_WIKI_SUFFIXES = ["Page", "Bar", "Map", "Note", "List", "Type", "Link", "Hub"]


def random_wikiword(rng: random.Random) -> str:
    return rng.choice(_WIKI_PREFIXES) + rng.choice(_WIKI_SUFFIXES) + (
        str(rng.randrange(10)) if rng.random() < 0.3 else ""
    )


def random_freetext_name(rng: random.Random) -> str:
    alphabet = string.ascii_lowercase + " '-éß"
    while True:
        name = "".join(rng.choice(alphabet) for _ in range(rng.randrange(1, 12)))
        name = name.strip()
        if name and "/" not in name:
            return name


def random_page_name(rng: random.Random) -> str:
    return random_wikiword(rng) if rng.random() < 0.6 else random_freetext_name(rng)


def random_value(rng: random.Random) -> str:
    kind = rng.randrange(6)
    if kind == 0:
        return random_wikiword(rng)
    if kind == 1:
        return f"[[{random_freetext_name(rng)}]]"
    if kind == 2:
        return f"{rng.randrange(1000, 2100):04d}-{rng.randrange(1, 13):02d}-{rng.randrange(1, 29):02d}"
    if kind == 3:
        return str(rng.randrange(-5000, 5000))
    if kind == 4:
        return f"{rng.randrange(-100, 100)}.{rng.randrange(100)}"
    return " ".join(random_freetext_name(rng) for _ in range(rng.randrange(1, 4)))


def random_line(rng: random.Random) -> str:
    kind = rng.randrange(10)
    if kind in (0, 1, 2):
        return f"{random_wikiword(rng)}: {random_value(rng)}"
    if kind == 3:
        return f"Note: {random_freetext_name(rng)}"  # prose colon, not a property
    if kind == 4:
        return ""
    if kind == 5:
        return f"{'#' * rng.randrange(1, 7)} {random_wikiword(rng)} heading"
    if kind == 6:
        return f"- item about {random_page_name(rng)}"
    if kind == 7:
        command = rng.choice(
            ["{{forwardlinks}}", "{{breadcrumbs}}", "{{allpages}}", "{{sametype}}",
             "{{triples}}", "{{properties}}", "{{nosuchcommand}}"]
        )
        return command
    if kind == 8:
        return (
            f"prose with {random_wikiword(rng)} and [[{random_freetext_name(rng)}]] "
            f"and `code {random_wikiword(rng)}` plus *em* and **strong**"
        )
    return f"plain text {rng.randrange(10000)} with http://example.com/{rng.randrange(100)}"


def random_source(rng: random.Random, max_lines: int = 12) -> str:
    lines = [random_line(rng) for _ in range(rng.randrange(0, max_lines))]
    terminator = rng.choice(["\n", "\r\n", ""])
    return "\n".join(lines) + (terminator if lines else "")


def populate_random_store(store: PageStore, rng: random.Random, pages: int) -> None:
    for _ in range(pages):
        store.save_page(random_page_name(rng), random_source(rng))


def type_page(parents=(), classes=()) -> str:
    lines = [f"TypeOf: [[{p}]]" for p in parents]
    lines += [f"InstanceOf: [[{c}]]" for c in classes]
    return "\n".join(lines) + "\n" if lines else "nothing here\n"


def random_type_graph(store: PageStore, rng: random.Random, n_nodes: int, instance_fraction=0.3):
    """Random TypeOf digraph (cycles allowed) with some InstanceOf pages."""
    nodes = [f"node {i}" for i in range(n_nodes)]
    typeof: dict[str, list[str]] = {}
    instanceof: dict[str, list[str]] = {}
    for node in nodes:
        parents = rng.sample(nodes, k=min(len(nodes), rng.randrange(0, 4)))
        classes = (
            rng.sample(nodes, k=min(len(nodes), rng.randrange(1, 3)))
            if rng.random() < instance_fraction
            else []
        )
        if parents:
            typeof[node] = parents
        if classes:
            instanceof[node] = classes
        store.save_page(node, type_page(parents, classes))
    return nodes, typeof, instanceof


# --- fixtures -----------------------------------------------------------------


@pytest.fixture
def store(tmp_path) -> PageStore:
    return PageStore(tmp_path / "data")


@pytest.fixture
def demo_store(tmp_path) -> PageStore:
    s = PageStore(tmp_path / "data")
    seed_demo(s)
    return s
