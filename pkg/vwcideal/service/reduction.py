import itertools
import logging
import typing
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from vwcideal.core.graph import Edge, Graph, make_graph
from vwcideal.core.labeling import VwcLabeling, validate_labeling

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SemiDigraph:
    """Semidirected graph on indices 0..n-1.

    ``directed`` holds ordered pairs (i, j) for an edge from i to j; ``undirected``
    holds pairs (i, j) with i < j.
    """

    n: int
    directed: frozenset[tuple[int, int]]
    undirected: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for i, j in itertools.chain(self.directed, self.undirected):
            if i == j:
                raise ValueError(f"loop at {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) outside [0, {self.n})")
        for i, j in self.undirected:
            if i > j:
                raise ValueError(f"undirected edge ({i}, {j}) is not normalized")

    @cached_property
    def digraph(self) -> nx.DiGraph:
        d = nx.DiGraph()
        d.add_nodes_from(range(self.n))
        d.add_edges_from(sorted(self.directed))
        return d

    @cached_property
    def reach(self) -> tuple[int, ...]:
        """Bitmask per index of everything reachable by a non-empty directed path."""
        return tuple(sum(1 << j for j in nx.descendants(self.digraph, i)) for i in range(self.n))

    def reaches(self, i: int, j: int) -> bool:
        return bool(self.reach[i] >> j & 1)

    def has_undirected(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.undirected

    def is_simple(self) -> bool:
        """No pair carries both a directed and an undirected edge."""
        return not any(self.has_undirected(i, j) for i, j in self.directed)


class ComponentPartition(typing.NamedTuple):
    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]


class ClosureCheck(typing.NamedTuple):
    closed: bool
    counterexample: tuple[int, int, int] | None


@dataclass(frozen=True)
class AcyclicReduction:
    ghat: Graph
    dhat: SemiDigraph
    partition: ComponentPartition

    @property
    def t(self) -> int:
        return self.dhat.n


class VertexCoverPrime(typing.NamedTuple):
    xs: frozenset[int]
    ys: frozenset[int]

    def cover(self, lab: VwcLabeling) -> frozenset[str]:
        """The generating variables as vertex labels."""
        return frozenset(lab.x(i) for i in self.xs) | frozenset(lab.y(i) for i in self.ys)


class AntichainRegularity(typing.NamedTuple):
    value: int
    witness: tuple[int, ...]
    via_dg: int
    via_dhat: int


def build_semidigraph(g: Graph, lab: VwcLabeling) -> SemiDigraph:
    """x_i y_j gives a directed edge i -> j, x_i x_j an undirected edge ij."""
    validate_labeling(g, lab)
    directed = set()
    undirected = set()
    for i, j in itertools.permutations(range(lab.n), 2):
        if g.has_edge(lab.x(i), lab.y(j)):
            directed.add((i, j))
        if i < j and g.has_edge(lab.x(i), lab.x(j)):
            undirected.add((i, j))
    return SemiDigraph(lab.n, frozenset(directed), frozenset(undirected))


def strong_components(d: SemiDigraph) -> ComponentPartition:
    """Strong components in topological order of the condensation, ties by least index."""
    condensed = nx.condensation(d.digraph)
    members = {c: tuple(sorted(condensed.nodes[c]["members"])) for c in condensed.nodes}
    order = nx.lexicographical_topological_sort(condensed, key=lambda c: members[c][0])
    components = tuple(members[c] for c in order)
    component_of = [0] * d.n
    for a, component in enumerate(components):
        for i in component:
            component_of[i] = a
    return ComponentPartition(components, tuple(component_of))


def is_acyclic(d: SemiDigraph) -> bool:
    return nx.is_directed_acyclic_graph(d.digraph)


def is_transitively_closed(d: SemiDigraph) -> ClosureCheck:
    """Check both closure rules over all distinct i, j, k.

    Directed ij and jk force directed ik; undirected ij and directed kj force undirected ik.
    """
    for i, j, k in itertools.permutations(range(d.n), 3):
        if (i, j) in d.directed and (j, k) in d.directed and (i, k) not in d.directed:
            return ClosureCheck(False, (i, j, k))
        if d.has_undirected(i, j) and (k, j) in d.directed and not d.has_undirected(i, k):
            return ClosureCheck(False, (i, j, k))
    return ClosureCheck(True, None)


def reduction_labeling(ar: AcyclicReduction) -> VwcLabeling:
    return VwcLabeling(tuple((f"u{a + 1}", f"v{a + 1}") for a in range(ar.t)))


def acyclic_reduction(g: Graph, lab: VwcLabeling) -> AcyclicReduction:
    """Contract the strong components of d_G into the graph G-hat.

    Raises:
        RuntimeError: If the semidirected graph of G-hat differs from the contracted one
    """
    d = build_semidigraph(g, lab)
    part = strong_components(d)
    t = len(part.components)

    directed = set()
    for a, b in itertools.permutations(range(t), 2):
        source = part.components[a][0]
        if any(d.reaches(source, j) for j in part.components[b]):
            directed.add((a, b))
    undirected = set()
    for i, j in d.undirected:
        a, b = sorted((part.component_of[i], part.component_of[j]))
        if a != b:
            undirected.add((a, b))
    dhat = SemiDigraph(t, frozenset(directed), frozenset(undirected))

    vertices = [label for a in range(t) for label in (f"u{a + 1}", f"v{a + 1}")]
    edges: list[Edge] = [(f"u{a + 1}", f"v{a + 1}") for a in range(t)]
    edges.extend((f"u{a + 1}", f"v{b + 1}") for a, b in sorted(directed))
    edges.extend((f"u{a + 1}", f"u{b + 1}") for a, b in sorted(undirected))
    ghat = make_graph(vertices, edges)

    ar = AcyclicReduction(ghat, dhat, part)
    recomputed = build_semidigraph(ghat, reduction_labeling(ar))
    if recomputed != dhat:
        raise RuntimeError(f"semidirected graph of the reduction {recomputed} differs from contraction {dhat}")
    logger.debug(f"acyclic reduction: {lab.n} pairs -> {t} components")
    return ar


def iter_antichains(d: SemiDigraph) -> typing.Iterator[tuple[int, ...]]:
    """Antichains in lexicographic order, the empty one first."""
    comparable = [d.reach[i] | sum(1 << j for j in range(d.n) if d.reaches(j, i)) for i in range(d.n)]

    def extend(chain: tuple[int, ...], blocked: int, start: int) -> typing.Iterator[tuple[int, ...]]:
        yield chain
        for i in range(start, d.n):
            if not blocked >> i & 1:
                yield from extend(chain + (i,), blocked | comparable[i], i + 1)

    yield from extend((), 0, 0)


def antichains(d: SemiDigraph) -> list[tuple[int, ...]]:
    return list(iter_antichains(d))


def is_antichain(d: SemiDigraph, a: typing.Iterable[int]) -> bool:
    return not any(d.reaches(i, j) for i, j in itertools.permutations(set(a), 2))


def omega_reduced(dhat: SemiDigraph, part: ComponentPartition, a: typing.Iterable[int]) -> frozenset[int]:
    """Union of the components Z_b with b at or above the antichain ``a`` of the reduced graph."""
    a = set(a)
    if not is_antichain(dhat, a):
        raise ValueError(f"{sorted(a)} is not an antichain")
    above = set(a)
    for b in a:
        above.update(j for j in range(dhat.n) if dhat.reaches(b, j))
    return frozenset(i for b in above for i in part.components[b])


def omega(d: SemiDigraph, part: ComponentPartition, a: typing.Iterable[int]) -> frozenset[int]:
    """Omega of an antichain of d_G, through its lift to the components."""
    a = set(a)
    if not is_antichain(d, a):
        raise ValueError(f"{sorted(a)} is not an antichain")
    above = set(a)
    for i in a:
        above.update(j for j in range(d.n) if d.reaches(i, j))
    components = {part.component_of[i] for i in above}
    return frozenset(i for b in components for i in part.components[b])


def _avoids_undirected(d: SemiDigraph, indices: frozenset[int]) -> bool:
    return not any(i in indices and j in indices for i, j in d.undirected)


def associated_primes(g: Graph, lab: VwcLabeling) -> list[VertexCoverPrime]:
    """One prime per antichain of the reduced graph whose Omega holds no undirected edge of d_G."""
    d = build_semidigraph(g, lab)
    ar = acyclic_reduction(g, lab)
    primes = []
    for a in iter_antichains(ar.dhat):
        ys = omega_reduced(ar.dhat, ar.partition, a)
        if _avoids_undirected(d, ys):
            primes.append(VertexCoverPrime(frozenset(range(lab.n)) - ys, ys))
    return primes


def antichain_regularity(g: Graph, lab: VwcLabeling) -> AntichainRegularity:
    """max |A| over admissible antichains, computed on d_G and on d of G-hat independently.

    Raises:
        RuntimeError: If the two maxima disagree
    """
    d = build_semidigraph(g, lab)
    ar = acyclic_reduction(g, lab)
    part = ar.partition

    witness: tuple[int, ...] = ()
    for a in iter_antichains(d):
        if len(a) > len(witness) and _avoids_undirected(d, omega(d, part, a)):
            witness = a

    dhat = build_semidigraph(ar.ghat, reduction_labeling(ar))
    via_dhat = 0
    for a in iter_antichains(dhat):
        if len(a) > via_dhat and _avoids_undirected(d, omega_reduced(dhat, part, a)):
            via_dhat = len(a)

    if len(witness) != via_dhat:
        raise RuntimeError(f"antichain maxima disagree: {len(witness)} on d_G, {via_dhat} on the reduction")
    return AntichainRegularity(len(witness), witness, len(witness), via_dhat)


def antichain_from_3disjoint(g: Graph, lab: VwcLabeling, edges: typing.Iterable[Edge]) -> tuple[int, ...]:
    """Map a pairwise 3-disjoint edge set of a Cohen-Macaulay graph to an antichain of d_G.

    Each edge x_i y_j contributes i; each edge x_i x_k contributes the smaller of i, k.
    """
    position = {}
    for i, (x, y) in enumerate(lab.pairs):
        position[x] = ("x", i)
        position[y] = ("y", i)
    chosen = set()
    for u, v in edges:
        (su, iu), (sv, iv) = position[u], position[v]
        if su == "x" and sv == "x":
            chosen.add(min(iu, iv))
        elif su == "x":
            chosen.add(iu)
        elif sv == "x":
            chosen.add(iv)
        else:
            raise ValueError(f"{u}-{v} joins two Y vertices")
    return tuple(sorted(chosen))


def reduction_identity_map(ar: AcyclicReduction, lab: VwcLabeling) -> dict[str, str]:
    """u_a -> x_i and v_a -> y_i when every component is a singleton {i}.

    Raises:
        ValueError: If some strong component has more than one index
    """
    mapping = {}
    for a, component in enumerate(ar.partition.components):
        if len(component) != 1:
            raise ValueError(f"component {a + 1} has {len(component)} indices")
        mapping[f"u{a + 1}"] = lab.x(component[0])
        mapping[f"v{a + 1}"] = lab.y(component[0])
    return mapping
