"""shawn: a semantic wiki engine.

Every page is a concept.  ``Predicate: value`` lines in the page source
become subject-predicate-object triples; the triples drive navigation
(breadcrumbs, forwardlinks, sidebars), inference, and an RDF export of the
emergent ontology.
"""

__version__ = "0.1.0"
