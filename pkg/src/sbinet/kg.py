"""In-memory knowledge graph over annotation triples.

Holds the merged triples of both datasets, answers basic-graph-pattern
queries with join semantics plus EXISTS filters, and derives the two facts
the rest of the pipeline hangs off: the mobility domain of the data and the
set of applicable indicators.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .annotated import EDGE_SET, NODE_SET, AnnotatedDataset, ROLE_LAT, ROLE_LONG
from .errors import RoleConflict
from .turtle import RDF_TYPE, Term, Triple
from .vocab import (
    CAP_CONNECTION_COUNTS,
    CAP_GEO,
    CAP_PATHS,
    CAP_WEIGHTS,
    ROUTE_BEARING_CLASSES,
    Matcher,
    capability_class_iri,
)


@dataclass(frozen=True)
class Var:
    name: str  # includes the leading '?'

    def __post_init__(self) -> None:
        if not self.name.startswith("?") or len(self.name) < 2:
            raise ValueError("variable names start with '?'")

    def __str__(self) -> str:
        return self.name


PatternTerm = Term | Var
TriplePattern = tuple[PatternTerm, PatternTerm, PatternTerm]


@dataclass(frozen=True)
class Pattern:
    """A basic graph pattern: joined triple patterns plus EXISTS sub-patterns."""

    clauses: tuple[TriplePattern, ...]
    exists: tuple["Pattern", ...] = ()

    def __post_init__(self) -> None:
        if not self.clauses:
            raise ValueError("a pattern needs at least one triple pattern")

    @staticmethod
    def of(*clauses: TriplePattern, exists: Sequence["Pattern"] = ()) -> "Pattern":
        return Pattern(tuple(clauses), tuple(exists))


class KnowledgeGraph:
    """Immutable triple set with subject/predicate/object indexes."""

    def __init__(
        self,
        triples: Iterable[Triple],
        prefix_maps: Iterable[Mapping[str, str]] = (),
    ):
        self.triples: frozenset[Triple] = frozenset(triples)
        self._prefix_maps = tuple(dict(m) for m in prefix_maps)
        self.matcher = Matcher(self._prefix_maps)
        self._by_s: dict[Term, list[Triple]] = {}
        self._by_p: dict[Term, list[Triple]] = {}
        self._by_o: dict[Term, list[Triple]] = {}
        for t in sorted(self.triples, key=lambda t: t.sort_key):
            self._by_s.setdefault(t.subject, []).append(t)
            self._by_p.setdefault(t.predicate, []).append(t)
            self._by_o.setdefault(t.object, []).append(t)

    @classmethod
    def from_datasets(cls, *datasets: AnnotatedDataset) -> "KnowledgeGraph":
        triples: set[Triple] = set()
        for ds in datasets:
            triples |= ds.triples
        return cls(triples, [ds.prefixes for ds in datasets])

    def with_facts(self, extra: Iterable[Triple]) -> "KnowledgeGraph":
        return KnowledgeGraph(self.triples | set(extra), self._prefix_maps)

    def __len__(self) -> int:
        return len(self.triples)

    def candidates(self, s: PatternTerm, p: PatternTerm, o: PatternTerm) -> list[Triple]:
        """Smallest index bucket consistent with the concrete positions."""
        buckets = []
        if isinstance(s, Term):
            buckets.append(self._by_s.get(s, []))
        if isinstance(p, Term):
            buckets.append(self._by_p.get(p, []))
        if isinstance(o, Term):
            buckets.append(self._by_o.get(o, []))
        if not buckets:
            return sorted(self.triples, key=lambda t: t.sort_key)
        return min(buckets, key=len)


def match(kg: KnowledgeGraph, pattern: Pattern) -> list[dict[str, Term]]:
    """All variable bindings satisfying the pattern, deterministically ordered."""
    solutions = _join(kg, list(pattern.clauses), {})
    for sub in pattern.exists:
        solutions = [b for b in solutions if _exists(kg, sub, b)]
    solutions.sort(key=lambda b: tuple(b[v].sort_key for v in sorted(b)))
    unique: list[dict[str, Term]] = []
    for sol in solutions:
        if not unique or unique[-1] != sol:
            unique.append(sol)
    return unique


def ask(kg: KnowledgeGraph, pattern: Pattern) -> bool:
    return bool(match(kg, pattern))


def _substitute(term: PatternTerm, binding: Mapping[str, Term]) -> PatternTerm:
    if isinstance(term, Var) and term.name in binding:
        return binding[term.name]
    return term


def _join(kg: KnowledgeGraph, clauses: list[TriplePattern], binding: dict[str, Term]) -> list[dict[str, Term]]:
    if not clauses:
        return [dict(binding)]
    s, p, o = (_substitute(t, binding) for t in clauses[0])
    out: list[dict[str, Term]] = []
    for triple in kg.candidates(s, p, o):
        attempt = dict(binding)
        if _unify(attempt, (s, p, o), triple):
            out.extend(_join(kg, clauses[1:], attempt))
    return out


def _unify(binding: dict[str, Term], pattern: TriplePattern, triple: Triple) -> bool:
    for want, got in zip(pattern, (triple.subject, triple.predicate, triple.object)):
        if isinstance(want, Var):
            if binding.get(want.name, got) != got:
                return False
            binding[want.name] = got
        elif want != got:
            return False
    return True


def _exists(kg: KnowledgeGraph, pattern: Pattern, binding: Mapping[str, Term]) -> bool:
    bound_clauses = [tuple(_substitute(t, binding) for t in clause) for clause in pattern.clauses]
    if _join(kg, bound_clauses, {}):
        for sub in pattern.exists:
            if not _exists(kg, sub, binding):
                return False
        return True
    return False


# --- domain detection -------------------------------------------------------------

class DomainClass(str, Enum):
    BICYCLE_SHARE = "BicycleShare"
    BUS = "Bus"
    SUBWAY = "Subway"
    UNKNOWN = "Unknown"


# Checked in this fixed priority order.
_DOMAIN_MARKERS: tuple[tuple[DomainClass, str, str], ...] = (
    (DomainClass.BICYCLE_SHARE, "qoe-m", "Bicycle-Share_Station"),
    (DomainClass.BUS, "qoe-m", "Bus_Stop"),
    (DomainClass.SUBWAY, "qoe-m", "Subway_Station"),
)


def detect_domain(kg: KnowledgeGraph) -> DomainClass:
    """First matching node typing wins; anything else is Unknown."""
    for domain, prefix, local in _DOMAIN_MARKERS:
        for marker in kg.matcher.terms(prefix, local):
            if ask(kg, Pattern.of((Var("?t"), RDF_TYPE, marker))):
                return domain
    return DomainClass.UNKNOWN


def classify_roles(
    ds_a: AnnotatedDataset, ds_b: AnnotatedDataset
) -> tuple[AnnotatedDataset, AnnotatedDataset]:
    """Validate the dataset pair and return it ordered (node set, edge set)."""
    roles = {ds_a.role, ds_b.role}
    if roles != {NODE_SET, EDGE_SET}:
        raise RoleConflict(
            f"expected one NodeSet and one EdgeSet, got "
            f"{ds_a.role} ({ds_a.name}) and {ds_b.role} ({ds_b.name})"
        )
    node_ds, edge_ds = (ds_a, ds_b) if ds_a.role == NODE_SET else (ds_b, ds_a)
    if node_ds.graph_id != edge_ds.graph_id:
        raise RoleConflict(
            f"datasets describe different graphs: "
            f"<{node_ds.graph_id}> vs <{edge_ds.graph_id}>"
        )
    return node_ds, edge_ds


# --- capabilities and indicator discovery -------------------------------------------

def derive_capabilities(
    node_ds: AnnotatedDataset, edge_ds: AnnotatedDataset, edge_count: int
) -> frozenset[str]:
    """Capability facts asserted once the pair validates and the network builds."""
    caps: set[str] = set()
    if edge_count >= 1:
        caps.add(CAP_CONNECTION_COUNTS)
        caps.add(CAP_WEIGHTS)  # explicit weight column or record multiplicity
    node_roles = node_ds.bindings.roles()
    if ROLE_LAT in node_roles and ROLE_LONG in node_roles:
        caps.add(CAP_GEO)
    if edge_represents_paths(edge_ds):
        caps.add(CAP_PATHS)
    return frozenset(caps)


def edge_represents_paths(edge_ds: AnnotatedDataset) -> bool:
    matcher = Matcher([edge_ds.prefixes])
    for prefix, local in ROUTE_BEARING_CLASSES:
        markers = matcher.iris(prefix, local)
        for t in edge_ds.triples:
            if t.predicate == RDF_TYPE and t.object.kind == "iri" and t.object.value in markers:
                return True
    return False


def capability_triples(capabilities: Iterable[str]) -> set[Triple]:
    facts = set()
    for cap in capabilities:
        subject = Term.iri(f"urn:x-network-capability-fact:{cap}")
        facts.add(Triple(subject, RDF_TYPE, Term.iri(capability_class_iri(cap))))
        if cap == CAP_CONNECTION_COUNTS:
            # the connection-count capability doubles as the 'conexoes' class
            facts.add(Triple(subject, RDF_TYPE, Term.iri("http://download.wikicrimes.org/ont/qoe-mconexoes")))
    return facts


def capability_pattern(capability: str) -> Pattern:
    return Pattern.of((Var("?c"), RDF_TYPE, Term.iri(capability_class_iri(capability))))


@dataclass(frozen=True)
class IndicatorStatus:
    id: str
    metric: str
    applicable: bool
    missing: tuple[str, ...] = ()

    @property
    def reason(self) -> str | None:
        if self.applicable:
            return None
        from .catalog import requirement_reason

        return "; ".join(requirement_reason(m) for m in self.missing)


def discover_indicators(kg: KnowledgeGraph, capabilities: Iterable[str], catalog) -> list[str]:
    """Ids of the catalog indicators whose requirements all hold."""
    return [s.id for s in discover_indicators_detailed(kg, capabilities, catalog) if s.applicable]


def discover_indicators_detailed(
    kg: KnowledgeGraph, capabilities: Iterable[str], catalog
) -> list[IndicatorStatus]:
    sealed = kg.with_facts(capability_triples(capabilities))
    out = []
    for spec in catalog:
        missing = tuple(
            req for req in spec.requirements if not ask(sealed, capability_pattern(req))
        )
        out.append(IndicatorStatus(spec.id, spec.metric, not missing, missing))
    return out
