"""Graph representation and the generators used by the power index process."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
import logging
import random
from typing import Any

import networkx as nx

from .const import PRISM_LAYERS, ROLE_CLIQUE, ROLE_CYCLE, ROLE_PENDANT, ROLE_X, ROLE_Y
from .exceptions import (
    GraphParseError,
    InfiniteDiameterError,
    InvalidSizeError,
    InvalidVertexError,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class HLabel:
    """Role of a vertex of H_{n,l}: column, row (1 or 2) and role tag."""

    column: int
    row: int
    role: str


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices 0..vertex_count-1."""

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[Any, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[Any] | None = None,
    ) -> Graph:
        """Build a graph, rejecting self-loops, duplicates and unknown ids."""
        neighbours: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidVertexError(f"Edge ({u}, {v}) outside 0..{vertex_count - 1}")
            if u == v:
                raise GraphParseError(f"Self-loop at vertex {u}")
            if v in neighbours[u]:
                raise GraphParseError(f"Duplicate edge ({min(u, v)}, {max(u, v)})")
            neighbours[u].add(v)
            neighbours[v].add(u)

        if labels is not None and len(labels) != vertex_count:
            raise InvalidSizeError(
                f"Got {len(labels)} labels for {vertex_count} vertices"
            )

        return cls(
            vertex_count=vertex_count,
            adjacency=tuple(tuple(sorted(adj)) for adj in neighbours),
            labels=tuple(labels) if labels is not None else None,
        )

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph, keep_labels: bool = True) -> Graph:
        """Convert a networkx graph; original node keys become labels."""
        relabelled = nx.convert_node_labels_to_integers(
            nx_graph, ordering="default", label_attribute="origin"
        )
        count = relabelled.number_of_nodes()
        labels = None
        if keep_labels:
            labels = [relabelled.nodes[v]["origin"] for v in range(count)]
        return cls.from_edges(count, relabelled.edges(), labels)

    def to_networkx(self) -> nx.Graph:
        """Return a networkx copy with integer nodes."""
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.vertex_count))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    def validate_vertex(self, v: int) -> None:
        """Raise if v is not a vertex id."""
        if not 0 <= v < self.vertex_count:
            raise InvalidVertexError(f"Vertex {v} outside 0..{self.vertex_count - 1}")

    def degree(self, v: int) -> int:
        """Return the degree of v."""
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        """Return the degree of every vertex in id order."""
        return [len(adj) for adj in self.adjacency]

    def closed_neighbourhood(self, v: int) -> tuple[int, ...]:
        """Return N[v] in ascending order."""
        return tuple(sorted((*self.adjacency[v], v)))

    def label(self, v: int) -> Any:
        """Return the role label of v, or None."""
        if self.labels is None:
            return None
        return self.labels[v]

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return sum(len(adj) for adj in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as (u, v) with u < v."""
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v:
                    yield (u, v)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Return the subgraph induced on vertices, renumbered in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[v])
            for u in vertices
            for v in self.adjacency[u]
            if v in index and index[u] < index[v]
        ]
        labels = [self.label(v) for v in vertices] if self.labels is not None else None
        return Graph.from_edges(len(vertices), edges, labels)

    def bfs_distances(self, source: int) -> dict[int, int]:
        """Return BFS distances from source to every reachable vertex."""
        self.validate_vertex(source)
        return dict(nx.single_source_shortest_path_length(self.to_networkx(), source))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidSizeError(message)


def make_path(n: int) -> Graph:
    """Return the path on n vertices."""
    _require(n >= 1, f"Path needs n >= 1, got {n}")
    return Graph.from_networkx(nx.path_graph(n), keep_labels=False)


def make_cycle(n: int) -> Graph:
    """Return the cycle on n vertices."""
    _require(n >= 3, f"Cycle needs n >= 3, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n), keep_labels=False)


def make_complete(n: int) -> Graph:
    """Return K_n."""
    _require(n >= 1, f"Complete graph needs n >= 1, got {n}")
    return Graph.from_networkx(nx.complete_graph(n), keep_labels=False)


def make_complete_bipartite(a: int, b: int) -> Graph:
    """Return K_{a,b}."""
    _require(a >= 1 and b >= 1, f"Complete bipartite graph needs a, b >= 1, got {a}, {b}")
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b), keep_labels=False)


def make_petersen() -> Graph:
    """Return the Petersen graph."""
    return Graph.from_networkx(nx.petersen_graph(), keep_labels=False)


def make_bowtie() -> Graph:
    """Return two triangles sharing the centre m (vertices a0, a1, m, b0, b1)."""
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (2, 4), (3, 4)]
    return Graph.from_edges(5, edges, ["a0", "a1", "m", "b0", "b1"])


def make_figure_one() -> Graph:
    """Return the six-vertex worked example (vertices 00, 10, 20, 30, 21, 31)."""
    # 00-10-20-30-31-21-20
    edges = [(0, 1), (1, 2), (2, 3), (3, 5), (4, 5), (2, 4)]
    return Graph.from_edges(6, edges, ["00", "10", "20", "30", "21", "31"])


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Return g □ h; labels record the coordinate pair (a, x)."""
    _require(g.vertex_count > 0 and h.vertex_count > 0, "Cartesian product of an empty graph")
    product = nx.cartesian_product(g.to_networkx(), h.to_networkx())
    ordered = nx.Graph()
    ordered.add_nodes_from(sorted(product.nodes()))
    ordered.add_edges_from(product.edges())
    return Graph.from_networkx(ordered)


def _clique_levels(j: int, n: int) -> list[range]:
    levels = []
    start = 0
    for i in range(n + 1):
        size = j * 2**i
        levels.append(range(start, start + size))
        start += size
    return levels


def _gjn_from_wiring(j: int, n: int, rng: random.Random | None) -> Graph:
    _require(j >= 1 and n >= 1, f"G_(j,n) needs j, n >= 1, got j={j}, n={n}")
    levels = _clique_levels(j, n)
    edges: list[tuple[int, int]] = []
    labels: list[int] = []

    for i, level in enumerate(levels):
        labels.extend([i] * len(level))
        edges.extend((u, v) for u in level for v in level if u < v)

    for i in range(n):
        upper = list(levels[i + 1])
        if rng is not None:
            rng.shuffle(upper)
        for t, u in enumerate(levels[i]):
            edges.append((u, upper[2 * t]))
            edges.append((u, upper[2 * t + 1]))

    return Graph.from_edges(levels[-1].stop, edges, labels)


def make_gjn(j: int, n: int) -> Graph:
    """Return G_{j,n}: cliques K_j, K_2j, ..., K_{j2^n} in a binary chain.

    Vertex t of level i is joined to vertices 2t and 2t+1 of level i+1, so
    every vertex below the top has two upward neighbours and every vertex
    above the bottom has one downward neighbour. Labels are clique levels.
    """
    return _gjn_from_wiring(j, n, None)


def make_gjn_random_wiring(j: int, n: int, rng_seed: int) -> Graph:
    """Return G_{j,n} with a shuffled inter-level matching (same degree law)."""
    return _gjn_from_wiring(j, n, random.Random(rng_seed))


def make_prism(j: int) -> Graph:
    """Return K_{j-1} □ C_4 labelled by layer 1..4 (G_1..G_4)."""
    _require(j >= 3, f"Prism needs j >= 3, got {j}")
    product = cartesian_product(make_complete(j - 1), make_cycle(PRISM_LAYERS))
    labels = [layer + 1 for _, layer in product.labels or ()]
    return Graph(product.vertex_count, product.adjacency, tuple(labels))


def hnl_cycle_vertex(n: int, column: int, row: int) -> int:
    """Return the id of v_{column,row} in make_hnl(n, ell)."""
    return (row - 1) * n + column % n


def hnl_clique_vertices(n: int, ell: int, column: int, row: int) -> range:
    """Return the ids of the clique hanging off v_{column,row}; z comes first."""
    base = 2 * n + ((row - 1) * n + column % n) * ell
    return range(base, base + ell)


def make_hnl(n: int, ell: int = 3) -> Graph:
    """Return H_{n,ell}: C_n □ P_2 with a pendant K_ell on every vertex."""
    _require(n >= 4 and n % 2 == 0, f"H_(n,l) needs an even n >= 4, got {n}")
    _require(ell >= 3, f"H_(n,l) needs l >= 3, got {ell}")

    vertex_count = 2 * n * (1 + ell)
    labels: list[HLabel | None] = [None] * vertex_count
    edges: list[tuple[int, int]] = []
    extra_roles = (ROLE_X, ROLE_Y) if ell == 3 else (ROLE_CLIQUE,) * (ell - 1)

    for row in (1, 2):
        for column in range(n):
            v = hnl_cycle_vertex(n, column, row)
            labels[v] = HLabel(column, row, ROLE_CYCLE)
            edges.append((v, hnl_cycle_vertex(n, column + 1, row)))
            if row == 1:
                edges.append((v, hnl_cycle_vertex(n, column, 2)))

            clique = hnl_clique_vertices(n, ell, column, row)
            edges.append((v, clique[0]))
            edges.extend((a, b) for a in clique for b in clique if a < b)
            labels[clique[0]] = HLabel(column, row, ROLE_PENDANT)
            for vertex, role in zip(clique[1:], extra_roles, strict=True):
                labels[vertex] = HLabel(column, row, role)

    return Graph.from_edges(vertex_count, edges, labels)


def attach_graph(host: Graph, s_graph: Graph, s_anchor: int, host_anchor: int) -> Graph:
    """Return host ∪ s_graph plus the bridge (s_anchor, host_anchor).

    Host vertices keep their ids; s_graph vertices are shifted by
    host.vertex_count and labelled ("S", original label).
    """
    host.validate_vertex(host_anchor)
    s_graph.validate_vertex(s_anchor)
    if isinstance(host.label(host_anchor), HLabel) and host.degree(host_anchor) != 2:
        _LOGGER.warning(
            "Attaching at vertex %d of degree %d; wave neutrality needs degree 2",
            host_anchor,
            host.degree(host_anchor),
        )

    offset = host.vertex_count
    edges = list(host.edges())
    edges.extend((u + offset, v + offset) for u, v in s_graph.edges())
    edges.append((host_anchor, s_anchor + offset))

    labels = None
    if host.labels is not None or s_graph.labels is not None:
        labels = [host.label(v) for v in range(host.vertex_count)]
        labels.extend(("S", s_graph.label(v)) for v in range(s_graph.vertex_count))

    return Graph.from_edges(offset + s_graph.vertex_count, edges, labels)


def random_connected_graph(n: int, edge_probability: float, rng_seed: int) -> Graph:
    """Return a connected G(n, p) draw, retrying deterministically from rng_seed."""
    _require(n >= 1, f"Random graph needs n >= 1, got {n}")
    rng = random.Random(rng_seed)
    while True:
        candidate = nx.gnp_random_graph(n, edge_probability, seed=rng.randrange(2**32))
        if nx.is_connected(candidate):
            return Graph.from_networkx(candidate, keep_labels=False)


def diameter(g: Graph) -> int:
    """Return the diameter of a connected graph."""
    _require(g.vertex_count > 0, "Diameter of the empty graph")
    nx_graph = g.to_networkx()
    if not nx.is_connected(nx_graph):
        raise InfiniteDiameterError("Graph is disconnected; diameter is infinite")
    return nx.diameter(nx_graph)
