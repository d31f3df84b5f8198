"""Well-known annotation vocabulary and namespace resolution.

Because prefixed names expand by bare concatenation, a vocabulary term can
only be recognized by its full IRI.  Candidate IRIs for a term are built from
(a) the prefix declarations of the source files and (b) a table of canonical
namespace IRIs, so files may declare the ontologies under either the plain or
the ``#``-terminated form.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .turtle import Term

# Canonical namespace IRIs accepted even when a file declares none of them.
CANONICAL_BASES: dict[str, tuple[str, ...]] = {
    "vstoi": ("http://hadatac.org/ont/vstoi", "http://hadatac.org/ont/vstoi#"),
    "graph": ("http://download.wikicrimes.org/ont/graph", "http://download.wikicrimes.org/ont/graph#"),
    "ccsv": ("http://download.wikicrimes.org/ont/ccsv", "http://download.wikicrimes.org/ont/ccsv#"),
    "qoe-m": ("http://download.wikicrimes.org/ont/qoe-m", "http://hadatac.org/ont/qoe-m#"),
    "qoe": ("http://download.wikicrimes.org/ont/qoe", "http://hadatac.org/ont/qoe#"),
    "rdfs": ("http://www.w3.org/2000/01/rdf-schema", "http://www.w3.org/2000/01/rdf-schema#"),
    "geo": ("http://www.w3.org/2003/01/geo/wgs84_pos", "http://www.w3.org/2003/01/geo/wgs84_pos#"),
}

# Edge classes whose semantics are traversable route segments rather than
# origin-destination events; they enable path metrics.
ROUTE_BEARING_CLASSES: tuple[tuple[str, str], ...] = (("qoe-m", "Bus_Route"),)

# Capability classes asserted after validation, queried like any other typing.
CAPABILITY_NS = "urn:x-network-capability:"
CAP_CONNECTION_COUNTS = "has-connection-counts"
CAP_GEO = "has-geo"
CAP_WEIGHTS = "has-weights"
CAP_PATHS = "represents-paths"
ALL_CAPABILITIES = (CAP_CONNECTION_COUNTS, CAP_GEO, CAP_WEIGHTS, CAP_PATHS)


class Matcher:
    """Resolves (prefix, local) vocabulary pairs against one or more prefix maps."""

    def __init__(self, prefix_maps: Iterable[Mapping[str, str]] = ()):
        self._declared: dict[str, set[str]] = {}
        for pmap in prefix_maps:
            for name, base in pmap.items():
                self._declared.setdefault(name, set()).add(base)

    def iris(self, prefix: str, local: str) -> frozenset[str]:
        bases = set(CANONICAL_BASES.get(prefix, ()))
        bases.update(self._declared.get(prefix, ()))
        return frozenset(base + local for base in bases)

    def terms(self, prefix: str, local: str) -> tuple[Term, ...]:
        return tuple(Term.iri(i) for i in sorted(self.iris(prefix, local)))

    def is_term(self, term: Term, prefix: str, local: str) -> bool:
        return term.kind == "iri" and term.value in self.iris(prefix, local)


def capability_class_iri(capability: str) -> str:
    return CAPABILITY_NS + capability
