import itertools
import logging
import typing
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

logger = logging.getLogger(__name__)

Edge = tuple[str, str]

EXHAUSTIVE_EDGE_LIMIT = 12


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph over string labels.

    The vertex order fixed at construction drives every iteration and tie-break.
    Edges are stored with their endpoints in vertex order; use ``make_graph`` to
    build one from arbitrary pairs.
    """

    vertices: tuple[str, ...]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError(f"duplicate vertex labels in {self.vertices}")
        for u, v in self.edges:
            if u not in self.index or v not in self.index:
                raise GraphError(f"edge {u}-{v} has an endpoint outside the vertex set")
            if u == v:
                raise GraphError(f"loop at {u}")
            if self.index[u] > self.index[v]:
                raise GraphError(f"edge {u}-{v} is not in vertex order")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adjacent: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adjacent[u].add(v)
            adjacent[v].add(u)
        return {v: frozenset(ns) for v, ns in adjacent.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        if v not in self.index:
            raise GraphError(f"unknown vertex {v!r}")
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return u in self.index and v in self.adjacency[u]

    def edge(self, u: str, v: str) -> Edge:
        """Return the stored orientation of edge uv, raising if absent."""
        if not self.has_edge(u, v):
            raise GraphError(f"{u}-{v} is not an edge")
        return (u, v) if self.index[u] < self.index[v] else (v, u)

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: (self.index[e[0]], self.index[e[1]]))

    def sort_vertices(self, s: typing.Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(s, key=self.index.__getitem__))

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(self.vertices)
        nxg.add_edges_from(self.edge_list())
        return nxg


class EdgePair(typing.NamedTuple):
    e: Edge
    f: Edge


class DisjointWitness(typing.NamedTuple):
    edges: tuple[Edge, ...]
    size: int


class WellCoveredResult(typing.NamedTuple):
    well_covered: bool
    very_well_covered: bool
    witness: tuple[tuple[str, ...], tuple[str, ...]] | None


def make_graph(vertices: typing.Iterable[str], edges: typing.Iterable[tuple[str, str]] = ()) -> Graph:
    """Build a graph, normalizing edge orientation and dropping repeated edges.

    Args:
        vertices: Vertex labels in the order that should drive iteration
        edges: Unordered label pairs

    Returns:
        The graph

    Raises:
        GraphError: On loops, duplicate labels or unknown endpoints
    """
    ordered = tuple(vertices)
    position = {v: i for i, v in enumerate(ordered)}
    normalized = set()
    for u, v in edges:
        if u not in position or v not in position:
            raise GraphError(f"edge {u}-{v} has an endpoint outside the vertex set")
        normalized.add((u, v) if position[u] <= position[v] else (v, u))
    return Graph(ordered, frozenset(normalized))


def induced_subgraph(g: Graph, s: typing.Iterable[str]) -> Graph:
    keep = set(s)
    unknown = keep - set(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertex labels: {sorted(unknown)}")
    vertices = tuple(v for v in g.vertices if v in keep)
    return Graph(vertices, frozenset(e for e in g.edges if e[0] in keep and e[1] in keep))


def remove_vertices(g: Graph, s: typing.Iterable[str]) -> Graph:
    """G minus S."""
    drop = set(s)
    unknown = drop - set(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertex labels: {sorted(unknown)}")
    return induced_subgraph(g, (v for v in g.vertices if v not in drop))


def closed_neighborhood(g: Graph, v: str) -> frozenset[str]:
    return g.neighbors(v) | {v}


def isolated_vertices(g: Graph) -> tuple[str, ...]:
    return tuple(v for v in g.vertices if not g.adjacency[v])


def strip_isolated(g: Graph) -> Graph:
    return remove_vertices(g, isolated_vertices(g))


def relabel(g: Graph, mapping: typing.Mapping[str, str]) -> Graph:
    """Rename vertices; the new graph keeps the old vertex order."""
    return make_graph((mapping[v] for v in g.vertices), ((mapping[u], mapping[v]) for u, v in g.edges))


def maximal_independent_sets(g: Graph) -> list[tuple[str, ...]]:
    """All inclusion-maximal independent sets, each in vertex order, listed lexicographically.

    Maximal independent sets of G are the maximal cliques of its complement, found
    with networkx's Bron-Kerbosch enumeration.
    """
    if not g.vertices:
        return [()]
    complement = nx.complement(g.to_networkx())
    found = [g.sort_vertices(clique) for clique in nx.find_cliques(complement)]
    return sorted(found, key=lambda s: [g.index[v] for v in s])


def minimal_vertex_covers(g: Graph) -> list[tuple[str, ...]]:
    return [tuple(v for v in g.vertices if v not in s) for s in maximal_independent_sets(g)]


def is_well_covered(g: Graph) -> WellCoveredResult:
    independent = maximal_independent_sets(g)
    smallest = min(independent, key=len)
    largest = max(independent, key=len)
    if len(smallest) != len(largest):
        return WellCoveredResult(False, False, (smallest, largest))
    if isolated_vertices(g):
        return WellCoveredResult(False, False, None)
    return WellCoveredResult(True, 2 * len(smallest) == len(g.vertices), None)


def three_disjoint(g: Graph, p: EdgePair) -> bool:
    """True iff the induced subgraph on the four endpoints is exactly the two edges."""
    e = g.edge(*p.e)
    f = g.edge(*p.f)
    if e == f:
        raise GraphError(f"edge pair repeats {e[0]}-{e[1]}")
    endpoints = set(e) | set(f)
    if len(endpoints) != 4:
        return False
    return len(induced_subgraph(g, endpoints).edges) == 2


def is_pairwise_3disjoint(g: Graph, edges: typing.Iterable[Edge]) -> bool:
    return all(three_disjoint(g, EdgePair(e, f)) for e, f in itertools.combinations(list(edges), 2))


def max_3disjoint(g: Graph) -> DisjointWitness:
    """a(G) with a certifying edge set.

    Exact maximum clique of the compatibility graph whose nodes are the edges of G,
    adjacent when 3-disjoint. Ties go to the lexicographically least set of edge
    positions in ``edge_list`` order.
    """
    edges = g.edge_list()
    compatibility = nx.Graph()
    compatibility.add_nodes_from(range(len(edges)))
    for a, b in itertools.combinations(range(len(edges)), 2):
        if three_disjoint(g, EdgePair(edges[a], edges[b])):
            compatibility.add_edge(a, b)

    best: tuple[int, ...] = ()
    for clique in nx.find_cliques(compatibility):
        candidate = tuple(sorted(clique))
        if len(candidate) > len(best) or (len(candidate) == len(best) and candidate < best):
            best = candidate

    chosen = tuple(edges[i] for i in best)
    logger.debug(f"a(G) = {len(chosen)} on {len(edges)} edges")
    return DisjointWitness(chosen, len(chosen))


def max_3disjoint_exhaustive(g: Graph) -> DisjointWitness:
    """Brute force over all edge subsets; only for small graphs."""
    edges = g.edge_list()
    if len(edges) > EXHAUSTIVE_EDGE_LIMIT:
        raise GraphError(f"exhaustive search limited to {EXHAUSTIVE_EDGE_LIMIT} edges, got {len(edges)}")
    for size in range(len(edges), 0, -1):
        for subset in itertools.combinations(edges, size):
            if is_pairwise_3disjoint(g, subset):
                return DisjointWitness(subset, size)
    return DisjointWitness((), 0)
