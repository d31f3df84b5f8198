import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `oracles`

from sbinet.network import Edge, Node, make_network

FIXTURES = Path(__file__).parent.parent / "fixtures"

BIKE = (FIXTURES / "bike" / "stations.csv", FIXTURES / "bike" / "trips.csv")
BUS = (FIXTURES / "bus" / "stops.csv", FIXTURES / "bus" / "routes.csv")
SUBWAY = (FIXTURES / "subway" / "stations.csv", FIXTURES / "subway" / "links.csv")
UNKNOWN = (FIXTURES / "unknown" / "points.csv", FIXTURES / "unknown" / "links.csv")


def net_of(edges, *, directed=False, paths=True, nodes=None):
    """Small-network builder for metric tests.

    ``edges``: (u, v) or (u, v, w) tuples; parallel entries are collapsed by
    summing weights, mirroring how record collapsing behaves.
    """
    found = set()
    collapsed: dict[tuple, list[float]] = {}
    for entry in edges:
        u, v = entry[0], entry[1]
        w = float(entry[2]) if len(entry) > 2 else 1.0
        found.update((u, v))
        if not directed and (v, u) in collapsed:
            u, v = v, u
        collapsed.setdefault((u, v), []).append(w)
    keys = set(nodes or ()) | found
    node_objs = [Node(k) for k in keys]
    edge_objs = [
        Edge(u, v, weight=sum(ws), multiplicity=len(ws)) for (u, v), ws in collapsed.items()
    ]
    return make_network(node_objs, edge_objs, directed, paths)


@pytest.fixture
def bike_pair():
    return BIKE


@pytest.fixture
def bus_pair():
    return BUS


def strip_geo(text: str) -> str:
    """Remove the geo bindings from a node-file prelude, keeping it parseable."""
    out = []
    skip_next = False
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if skip_next:  # the ccsv:atColumn line of a dropped entity
            skip_next = False
            continue
        if stripped in ("<lat>", "<long>"):
            skip_next = True
            continue
        if stripped.startswith(("geo:lat", "geo:long")):
            continue
        out.append(line)
    return "".join(out)
