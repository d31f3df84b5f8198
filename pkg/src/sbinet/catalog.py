"""Built-in indicator catalog: what can be shown, when, and how.

Each indicator fixes its visualization, its dimension/measure bindings over
the enriched tables (or the metrics summary) and the capability requirements
that gate it.  Display names are localized per mobility domain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kg import DomainClass
from .vocab import CAP_CONNECTION_COUNTS, CAP_GEO, CAP_PATHS, CAP_WEIGHTS

VIZ_HISTOGRAM = "histogram"
VIZ_BAR = "bar"
VIZ_SCATTER = "scatter"
VIZ_MAP_POINTS = "map_points"
VIZ_MAP_PATH = "map_path"

OP_AVERAGE = "average"
OP_SUM = "sum"
OP_COUNT = "count"
OP_DIRECT = "direct"


@dataclass(frozen=True)
class IndicatorSpec:
    id: str
    metric: str
    viz: str
    data: str  # nodes | edges | metrics
    requirements: tuple[str, ...]
    measure_op: str
    measure_field: str
    dimension_field: str | None = None
    result_kind: str = "scalar"  # scalar | per_node | partition | path | path_list | ranking


# Entity vocabulary per domain, used to assemble titles.
_NOUNS: dict[DomainClass, tuple[str, str]] = {
    DomainClass.BICYCLE_SHARE: ("estação de bicicletas", "estações de bicicletas"),
    DomainClass.BUS: ("parada de ônibus", "paradas de ônibus"),
    DomainClass.SUBWAY: ("estação de metrô", "estações de metrô"),
    DomainClass.UNKNOWN: ("nó da rede", "nós da rede"),
}

_TITLES: dict[str, str] = {
    "avg-interconnections": "Média de interligações entre {plural}",
    "connections-vs-usage": "Conexões versus utilização por {singular}",
    "communities-map": "Comunidades de {plural}",
    "centrality-map": "Centralidade de grau das {plural}",
    "lowest-offer": "{plural_cap} com menor volume de oferta",
    "diameter-route": "Maior rota do sistema em uma viagem",
    "terminal-candidates": "{plural_cap} candidatas a terminais",
    "express-route-candidates": "Maiores rotas por caminhos mínimos",
}


def indicator_title(indicator_id: str, domain: DomainClass) -> str:
    singular, plural = _NOUNS[domain]
    template = _TITLES[indicator_id]
    return template.format(
        singular=singular,
        plural=plural,
        plural_cap=plural[0].upper() + plural[1:],
    )


_REASONS = {
    CAP_CONNECTION_COUNTS: "requires connection counts",
    CAP_GEO: "requires geo bindings",
    CAP_WEIGHTS: "requires edge weights",
    CAP_PATHS: "requires represents-paths",
}


def requirement_reason(capability: str) -> str:
    return _REASONS.get(capability, f"requires {capability}")


def builtin_catalog() -> tuple[IndicatorSpec, ...]:
    """The fixed indicator inventory, in dashboard order."""
    return (
        IndicatorSpec(
            id="avg-interconnections",
            metric="average_degree",
            viz=VIZ_HISTOGRAM,
            data="nodes",
            requirements=(CAP_CONNECTION_COUNTS,),
            measure_op=OP_AVERAGE,
            measure_field="sbi_degree",
            dimension_field=None,  # one measure, no dimension
            result_kind="scalar",
        ),
        IndicatorSpec(
            id="connections-vs-usage",
            metric="node_weighted_degrees",
            viz=VIZ_SCATTER,
            data="nodes",
            requirements=(CAP_CONNECTION_COUNTS, CAP_WEIGHTS),
            measure_op=OP_DIRECT,
            measure_field="sbi_weighted_degree",
            dimension_field="sbi_key",
            result_kind="per_node",
        ),
        IndicatorSpec(
            id="communities-map",
            metric="detect_communities",
            viz=VIZ_MAP_POINTS,
            data="nodes",
            requirements=(CAP_CONNECTION_COUNTS, CAP_GEO),
            measure_op=OP_DIRECT,
            measure_field="sbi_community",
            dimension_field="sbi_key",
            result_kind="partition",
        ),
        IndicatorSpec(
            id="centrality-map",
            metric="degree_centrality",
            viz=VIZ_MAP_POINTS,
            data="nodes",
            requirements=(CAP_CONNECTION_COUNTS, CAP_GEO),
            measure_op=OP_DIRECT,
            measure_field="sbi_degree_centrality",
            dimension_field="sbi_key",
            result_kind="per_node",
        ),
        IndicatorSpec(
            id="lowest-offer",
            metric="bottom_k_degree",
            viz=VIZ_BAR,
            data="nodes",
            requirements=(CAP_CONNECTION_COUNTS,),
            measure_op=OP_DIRECT,
            measure_field="sbi_degree",
            dimension_field="sbi_key",
            result_kind="ranking",
        ),
        IndicatorSpec(
            id="diameter-route",
            metric="diameter",
            viz=VIZ_MAP_PATH,
            data="metrics",
            requirements=(CAP_CONNECTION_COUNTS, CAP_PATHS, CAP_GEO),
            measure_op=OP_DIRECT,
            measure_field="diameter",
            dimension_field=None,
            result_kind="path",
        ),
        IndicatorSpec(
            id="terminal-candidates",
            metric="betweenness",
            viz=VIZ_MAP_POINTS,
            data="nodes",
            requirements=(CAP_CONNECTION_COUNTS, CAP_PATHS, CAP_GEO),
            measure_op=OP_DIRECT,
            measure_field="sbi_betweenness",
            dimension_field="sbi_key",
            result_kind="per_node",
        ),
        IndicatorSpec(
            id="express-route-candidates",
            metric="top_k_longest_min_paths",
            viz=VIZ_BAR,
            data="metrics",
            requirements=(CAP_CONNECTION_COUNTS, CAP_PATHS),
            measure_op=OP_DIRECT,
            measure_field="top_paths",
            dimension_field=None,
            result_kind="path_list",
        ),
    )
