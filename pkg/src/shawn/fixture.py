"""Demo wiki seeded by ``shawn init``.

The pages exercise every engine feature out of the box: property lines with
references and typed literals, a transitive acquaintance chain, a predicate
hierarchy, breadcrumb ancestry, predicate pages listing their triples, and a
UriMap alias.
"""

from __future__ import annotations

from .store import PageStore

DEMO_PAGES: dict[str, str] = {
    "HomePage": """\
# Welcome

Every page on this wiki is a concept. Lines like `LivesIn: [[Leipzig]]`
become facts about the page, and the facts immediately turn into
navigation: breadcrumbs, forwardlinks, and the sidebar listings.

Some places to start:

- People: JohnDoe, MaryMajor, RichardRoe, [[Shakespeare]]
- Relationship types: LivesIn, KnowsOf, isAuthorOf
- Everything at once: AllPages

The whole graph is exported as RDF after every save.
""",
    "SideBar": """\
{{breadcrumbs}}

## Where can I go

{{forwardlinks}}

## Same type

{{sametype}}
""",
    "GotoBar": "HomePage AllPages\n",
    "AllPages": "# All pages\n\n{{allpages}}\n",
    "UriMap": """\
JohnDoe: http://example.com/people/johndoe#me

Maps page names to external URIs. Each property line above gives the page
named by the predicate an external identity in the RDF export.
""",
    # people
    "JohnDoe": """\
InstanceOf: [[Person]]
LivesIn: [[Leipzig]]
KnowsOf: MaryMajor
InterestsIn: SemanticWeb
DateOfBirth: 1972-05-14

Keeps this wiki as a personal notebook. Knows MaryMajor from the local
reading group.
""",
    "MaryMajor": """\
InstanceOf: [[Person]]
LivesIn: [[Leipzig]]
KnowsOf: RichardRoe
InterestsIn: SemanticWeb
InterestsIn: WikiEngines
DateOfBirth: 1968-11-02

Organizes the reading group and collects wiki engines.
""",
    "RichardRoe": """\
InstanceOf: [[Person]]
LivesIn: [[Berlin]]
InterestsIn: WikiEngines
DateOfBirth: 1975-01-30
""",
    "Shakespeare": """\
InstanceOf: [[Person]]
isAuthorOf: [[Hamlet]]
DateOfBirth: 1564-04-26
LivesIn: [[London]]

The playwright. The relationships between the characters of a play make a
fine modelling exercise; see [[Hamlet]].
""",
    "Marlowe": """\
InstanceOf: [[Person]]
DateOfBirth: 1564-02-26
GotToKnowBy: [[Shakespeare]]

Playwright and poet, born the same year as [[Shakespeare]].
""",
    "Jonson": """\
InstanceOf: [[Person]]
DateOfBirth: 1572-06-11

Came to the stage a little later than [[Shakespeare]] and [[Marlowe]].
""",
    # works and places
    "Hamlet": "InstanceOf: [[Play]]\n\nThe Prince of Denmark.\n",
    "Leipzig": "InstanceOf: [[City]]\n",
    "Berlin": "InstanceOf: [[City]]\n",
    "London": "InstanceOf: [[City]]\n",
    # class hierarchy for breadcrumbs
    "Person": "TypeOf: [[Agent]]\n\nA human concept; people pages are instances of this.\n",
    "Agent": "Anything that can act.\n",
    "Play": "TypeOf: [[Work]]\n",
    "Work": "Something someone made.\n",
    "City": "TypeOf: [[Place]]\n",
    "Place": "Somewhere to be.\n",
    "SemanticWeb": "InstanceOf: [[Topic]]\n",
    "WikiEngines": "InstanceOf: [[Topic]]\n",
    "Topic": "Something to be interested in.\n",
    # relationship types; each lists its own usage
    "LivesIn": """\
TypeOf: [[RelationshipType]]

Where a person lives.

{{triples}}
""",
    "KnowsOf": """\
TypeOf: [[RelationshipType]]
IsTransitive: Yes

Acquaintance between people. Declared transitive, so chains of
acquaintances close into inferred facts.

{{triples}}
""",
    "GotToKnowBy": """\
TypeOf: [[RelationshipType]]
IsA: KnowsOf

How one met someone; a special case of KnowsOf.

{{triples}}
""",
    "InterestsIn": """\
TypeOf: [[RelationshipType]]

A topic someone cares about.

{{triples}}
""",
    "isAuthorOf": """\
TypeOf: [[RelationshipType]]

Authorship of a work.

{{triples}}
""",
    "DateOfBirth": """\
TypeOf: [[RelationshipType]]

A date literal, useful for same-year queries.

{{triples}}
""",
    "RelationshipType": """\
Pages describing predicates. Their own property lines declare behaviour,
like `IsTransitive: Yes` or `IsA: KnowsOf`.
""",
}


def seed_demo(store: PageStore) -> None:
    """Save every demo page (deterministic order)."""
    for name in sorted(DEMO_PAGES):
        store.save_page(name, DEMO_PAGES[name])
