import enum
import itertools
import logging
import typing
from dataclasses import dataclass

import numpy as np

from vwcideal.core.graph import Edge, Graph, make_graph
from vwcideal.core.labeling import VwcLabeling
from vwcideal.service.classify import check_unmixed_conditions

logger = logging.getLogger(__name__)

EXHAUSTIVE_PAIR_LIMIT = 4
RANDOM_ATTEMPTS = 100


class GeneratorError(ValueError):
    pass


class GeneratorMode(enum.StrEnum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"
    WHISKER = "whisker"
    POSET = "poset"


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    density: float = 0.5
    mode: GeneratorMode = GeneratorMode.RANDOM

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GeneratorError(f"pair count must be positive, got {self.n}")
        if not 0.0 <= self.density <= 1.0:
            raise GeneratorError(f"density must lie in [0, 1], got {self.density}")
        if self.mode is GeneratorMode.EXHAUSTIVE and self.n > EXHAUSTIVE_PAIR_LIMIT:
            raise GeneratorError(f"exhaustive mode supports n <= {EXHAUSTIVE_PAIR_LIMIT}, got {self.n}")


def canonical_labeling(n: int) -> VwcLabeling:
    return VwcLabeling(tuple((f"x{i + 1}", f"y{i + 1}") for i in range(n)))


def _canonical_vertices(n: int) -> list[str]:
    return [label for i in range(n) for label in (f"x{i + 1}", f"y{i + 1}")]


def _matching(n: int) -> list[Edge]:
    return [(f"x{i + 1}", f"y{i + 1}") for i in range(n)]


def _optional_slots(n: int) -> list[Edge]:
    """Edges x_ix_j (i < j) followed by x_iy_j (i != j)."""
    slots: list[Edge] = [(f"x{i + 1}", f"x{j + 1}") for i, j in itertools.combinations(range(n), 2)]
    slots.extend((f"x{i + 1}", f"y{j + 1}") for i, j in itertools.permutations(range(n), 2))
    return slots


def whisker(g: Graph) -> Graph:
    """Attach a pendant ``v'`` to every vertex v; pendants follow their vertex in the order.

    Raises:
        GeneratorError: If a pendant label is already a vertex of g
    """
    pendant = {v: f"{v}'" for v in g.vertices}
    clash = set(pendant.values()) & set(g.vertices)
    if clash:
        raise GeneratorError(f"pendant labels collide with vertices: {sorted(clash)}")
    vertices = [label for v in g.vertices for label in (v, pendant[v])]
    return make_graph(vertices, list(g.edges) + [(v, pendant[v]) for v in g.vertices])


def whisker_labeling(g: Graph) -> VwcLabeling:
    return VwcLabeling(tuple((v, f"{v}'") for v in g.vertices))


def enumerate_candidates(n: int) -> typing.Iterator[Graph]:
    """Every labeled graph on x_1..x_n, y_1..y_n holding the matching x_iy_i.

    Candidates come in order of the bitmask over the optional slots.

    Raises:
        GeneratorError: If n exceeds the exhaustive limit
    """
    GeneratorConfig(n, mode=GeneratorMode.EXHAUSTIVE)
    vertices = _canonical_vertices(n)
    matching = _matching(n)
    slots = _optional_slots(n)
    for mask in range(1 << len(slots)):
        chosen = [slot for b, slot in enumerate(slots) if mask >> b & 1]
        yield make_graph(vertices, matching + chosen)


def enumerate_vwc(n: int) -> typing.Iterator[Graph]:
    """Candidates that satisfy conditions (i) and (ii) under the canonical labeling."""
    lab = canonical_labeling(n)
    emitted = 0
    for g in enumerate_candidates(n):
        if not check_unmixed_conditions(g, lab):
            emitted += 1
            yield g
    logger.debug(f"enumerated {emitted} very well-covered labeled graphs with {n} pairs")


def _repair(g: Graph, lab: VwcLabeling) -> Graph | None:
    """Add the edges condition (i) asks for until none is missing; None if (ii) still fails."""
    while True:
        violations = check_unmixed_conditions(g, lab)
        missing = {v.edge for v in violations if v.condition == "i" and v.edge is not None}
        if not missing:
            break
        g = make_graph(g.vertices, list(g.edges) + sorted(missing))
    if violations:
        return None
    return g


def _drop_conflicts(chosen: list[Edge]) -> list[Edge]:
    """Drop every sampled x_ix_j that sits next to a sampled x_iy_j or x_jy_i."""
    cross = {(u, v) for u, v in chosen if v.startswith("y")}
    return [
        (u, v)
        for u, v in chosen
        if v.startswith("y") or ((u, f"y{v[1:]}") not in cross and (v, f"y{u[1:]}") not in cross)
    ]


def random_vwc(cfg: GeneratorConfig) -> Graph:
    """Seeded very well-covered graph: sample optional edges with ``cfg.density``, repair, reject on (ii).

    Raises:
        GeneratorError: If no attempt survives the repair
    """
    rng = np.random.default_rng(cfg.seed)
    lab = canonical_labeling(cfg.n)
    vertices = _canonical_vertices(cfg.n)
    slots = _optional_slots(cfg.n)
    for attempt in range(RANDOM_ATTEMPTS):
        draws = rng.random(len(slots))
        chosen = _drop_conflicts([slot for slot, draw in zip(slots, draws) if draw < cfg.density])
        repaired = _repair(make_graph(vertices, _matching(cfg.n) + chosen), lab)
        if repaired is not None:
            logger.debug(f"random graph for seed {cfg.seed} accepted after {attempt + 1} attempts")
            return repaired
    raise GeneratorError(f"no very well-covered graph after {RANDOM_ATTEMPTS} attempts (seed {cfg.seed})")


def random_any_graph(n_vertices: int, density: float, seed: int) -> Graph:
    """Erdos-Renyi graph on v1..vn with edge probability ``density``."""
    if n_vertices < 1:
        raise GeneratorError(f"vertex count must be positive, got {n_vertices}")
    if not 0.0 <= density <= 1.0:
        raise GeneratorError(f"density must lie in [0, 1], got {density}")
    rng = np.random.default_rng(seed)
    vertices = [f"v{i + 1}" for i in range(n_vertices)]
    pairs = list(itertools.combinations(vertices, 2))
    draws = rng.random(len(pairs))
    return make_graph(vertices, [pair for pair, draw in zip(pairs, draws) if draw < density])


def bipartite_from_poset(n: int, relation: typing.Iterable[tuple[int, int]]) -> Graph:
    """Bipartite graph with x_iy_j an edge iff i = j or i < j in the order; indices are 0-based.

    Raises:
        GeneratorError: If relation is not a strict partial order on 0..n-1
    """
    if n < 1:
        raise GeneratorError(f"pair count must be positive, got {n}")
    less = set(relation)
    for i, j in less:
        if not (0 <= i < n and 0 <= j < n):
            raise GeneratorError(f"pair ({i + 1}, {j + 1}) outside 1..{n}")
        if i == j:
            raise GeneratorError(f"relation is not irreflexive at {i + 1}")
    for (i, j), (k, m) in itertools.product(less, repeat=2):
        if j == k and (i, m) not in less:
            missing = f"{i + 1}<{m + 1}"
            raise GeneratorError(f"relation is not transitive: {i + 1}<{j + 1} and {j + 1}<{m + 1} but not {missing}")
    edges = _matching(n) + [(f"x{i + 1}", f"y{j + 1}") for i, j in sorted(less)]
    return make_graph(_canonical_vertices(n), edges)


def generate(
    cfg: GeneratorConfig, base: Graph | None = None, relation: typing.Iterable[tuple[int, int]] = ()
) -> typing.Iterator[Graph]:
    """Stream the graphs a config describes: one graph, or every graph for exhaustive mode."""
    match cfg.mode:
        case GeneratorMode.EXHAUSTIVE:
            yield from enumerate_vwc(cfg.n)
        case GeneratorMode.RANDOM:
            yield random_vwc(cfg)
        case GeneratorMode.WHISKER:
            if base is None:
                raise GeneratorError("whisker mode needs an input graph")
            yield whisker(base)
        case GeneratorMode.POSET:
            yield bipartite_from_poset(cfg.n, relation)
