import itertools
import logging
import typing
from dataclasses import dataclass
from functools import cached_property

from vwcideal.core.graph import (
    Graph,
    closed_neighborhood,
    maximal_independent_sets,
    minimal_vertex_covers,
    remove_vertices,
)
from vwcideal.core.ideal import SquarefreeMonomialIdeal, make_ideal
from vwcideal.core.labeling import VwcLabeling
from vwcideal.service.classify import relabel_for_star_star, satisfies_star_star

logger = logging.getLogger(__name__)

Face = frozenset[str]

DEFAULT_SHELLING_LIMIT = 16


class ComplexError(ValueError):
    pass


class SplittingError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplicial complex given by its facets over an ordered ambient vertex set.

    No facets is the void complex; the single facet ``frozenset()`` is the
    irrelevant complex {empty set}. Ambient vertices outside every facet are allowed.
    """

    vertices: tuple[str, ...]
    facets: frozenset[Face]

    def __post_init__(self) -> None:
        known = set(self.vertices)
        for f in self.facets:
            if not f <= known:
                raise ComplexError(f"facet uses unknown vertices: {sorted(f - known)}")
        if minimalize_up(self.facets) != self.facets:
            raise ComplexError("facet set contains a face of another facet")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        """Largest facet size minus one; -1 for {empty set}, -2 by convention for the void complex."""
        return max((len(f) for f in self.facets), default=-1) - 1

    def sort_face(self, face: typing.Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(face, key=self.index.__getitem__))

    def sorted_facets(self) -> list[tuple[str, ...]]:
        return sorted((self.sort_face(f) for f in self.facets), key=lambda f: [self.index[v] for v in f])

    def support(self) -> tuple[str, ...]:
        used = set().union(*self.facets) if self.facets else set()
        return tuple(v for v in self.vertices if v in used)

    def is_face(self, face: typing.Iterable[str]) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def faces(self) -> typing.Iterator[Face]:
        """Every face once, the empty face included for a non-void complex."""
        seen: set[Face] = set()
        for facet in self.sorted_facets():
            for size in range(len(facet) + 1):
                for face in itertools.combinations(facet, size):
                    f = frozenset(face)
                    if f not in seen:
                        seen.add(f)
                        yield f


def minimalize_up(faces: typing.Iterable[Face]) -> frozenset[Face]:
    """Keep only inclusion-maximal faces."""
    candidates = sorted(set(faces), key=len, reverse=True)
    kept: list[Face] = []
    for f in candidates:
        if not any(f <= k for k in kept):
            kept.append(f)
    return frozenset(kept)


def make_complex(vertices: typing.Iterable[str], faces: typing.Iterable[typing.Iterable[str]]) -> SimplicialComplex:
    return SimplicialComplex(tuple(vertices), minimalize_up(frozenset(f) for f in faces))


def independence_complex(g: Graph) -> SimplicialComplex:
    return make_complex(g.vertices, maximal_independent_sets(g))


def _require_face(c: SimplicialComplex, f: Face) -> None:
    if not c.is_face(f):
        raise ComplexError(f"{sorted(f)} is not a face")


def link(c: SimplicialComplex, f: typing.Iterable[str]) -> SimplicialComplex:
    f = frozenset(f)
    _require_face(c, f)
    return make_complex((v for v in c.vertices if v not in f), (facet - f for facet in c.facets if f <= facet))


def deletion(c: SimplicialComplex, f: typing.Iterable[str]) -> SimplicialComplex:
    f = frozenset(f)
    _require_face(c, f)
    return make_complex((v for v in c.vertices if v not in f), (facet - f for facet in c.facets))


def is_pure(c: SimplicialComplex) -> bool:
    return len({len(f) for f in c.facets}) <= 1


def facets_text(c: SimplicialComplex) -> str:
    """One facet per line, labels separated by spaces; the empty facet is an empty line."""
    return "\n".join(" ".join(f) for f in c.sorted_facets())


# vertex decomposability


class VertexDecomposition(typing.NamedTuple):
    decomposable: bool
    certificate: dict[str, typing.Any] | None
    reason: str | None = None


def canonical_form(c: SimplicialComplex) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    """Facets renamed by first occurrence after sorting; returns the key and the label of each new name."""
    names: dict[str, int] = {}
    for facet in c.sorted_facets():
        for v in facet:
            names.setdefault(v, len(names))
    key = tuple(sorted(tuple(sorted(names[v] for v in f)) for f in c.facets))
    labels = tuple(sorted(names, key=names.__getitem__))
    return key, labels


def is_shedding_vertex(c: SimplicialComplex, x: str) -> bool:
    """Every facet of the deletion of x is a facet of c."""
    without = [f for f in c.facets if x not in f]
    return all(any(f - {x} < g for g in without) for f in c.facets if x in f)


class VertexDecomposer:
    """Memoized vertex decomposability decisions.

    The memo maps a canonical facet key to the canonical name of a shedding vertex,
    -1 for a base case, or None when no decomposition exists. Decisions depend only
    on the key, so a shared instance gives the same answers in any order.
    """

    def __init__(self) -> None:
        self.memo: dict[tuple[tuple[int, ...], ...], int | None] = {}

    def decide(self, c: SimplicialComplex, prefer: typing.Sequence[str] = ()) -> bool:
        key, labels = canonical_form(c)
        if key in self.memo:
            return self.memo[key] is not None
        if len(c.facets) <= 1:
            self.memo[key] = -1
            return True
        position = {v: i for i, v in enumerate(labels)}
        candidates = [v for v in prefer if v in position]
        candidates += [v for v in c.support() if v not in candidates]
        for x in candidates:
            if not is_shedding_vertex(c, x):
                continue
            face = frozenset({x})
            if self.decide(link(c, face)) and self.decide(deletion(c, face)):
                self.memo[key] = position[x]
                return True
        self.memo[key] = None
        return False

    def certificate(self, c: SimplicialComplex) -> dict[str, typing.Any]:
        """Shedding-vertex tree of a decomposable complex.

        Subcomplexes missing from the memo are decided on the way down; the memo may
        hold c only through another complex with the same canonical key.

        Raises:
            ComplexError: If c is not vertex decomposable
        """
        key, labels = canonical_form(c)
        if key not in self.memo:
            self.decide(c)
        shed = self.memo[key]
        if shed is None:
            raise ComplexError("complex is not vertex decomposable")
        if shed == -1:
            return {"void": True} if c.is_void else {"simplex": list(c.sorted_facets()[0])}
        x = labels[shed]
        face = frozenset({x})
        return {"shed": x, "link": self.certificate(link(c, face)), "deletion": self.certificate(deletion(c, face))}


def is_vertex_decomposable(
    c: SimplicialComplex, prefer: typing.Sequence[str] = (), decomposer: VertexDecomposer | None = None
) -> VertexDecomposition:
    """Decide vertex decomposability; simplex and void complex are the base cases.

    Args:
        c: The complex
        prefer: Shedding candidates to try before the rest, in this order
        decomposer: Memo to share across calls; a fresh one per call by default
    """
    decomposer = VertexDecomposer() if decomposer is None else decomposer
    if decomposer.decide(c, prefer):
        return VertexDecomposition(True, decomposer.certificate(c))
    tried = len(c.support())
    return VertexDecomposition(False, None, f"no shedding vertex among {tried} candidates leads to a decomposition")


def dominance_pairs(g: Graph) -> list[tuple[str, str]]:
    """Ordered pairs (x, y), x != y, with the closed neighborhood of x inside that of y."""
    return [
        (x, y)
        for x, y in itertools.permutations(g.vertices, 2)
        if closed_neighborhood(g, x) <= closed_neighborhood(g, y)
    ]


def graph_is_vertex_decomposable(g: Graph, decomposer: VertexDecomposer | None = None) -> VertexDecomposition:
    """Vertex decomposability of the independence complex, neighbors of degree-one vertices shed first."""
    prefer: list[str] = []
    for x, y in dominance_pairs(g):
        if g.degree(x) == 1 and y not in prefer:
            prefer.append(y)
    return is_vertex_decomposable(independence_complex(g), prefer, decomposer)


# shellability


class Shelling(typing.NamedTuple):
    shellable: bool | None
    order: tuple[tuple[str, ...], ...] | None
    reason: str | None = None


def _extends_shelling(placed: typing.Sequence[Face], facet: Face) -> bool:
    # vertices v with facet - F_l = {v} for some earlier F_l
    removable = {next(iter(facet - f)) for f in placed if len(facet - f) == 1}
    return all((facet - f) & removable for f in placed)


def is_pure_shellable(c: SimplicialComplex, limit: int = DEFAULT_SHELLING_LIMIT) -> Shelling:
    """Search facet orders for a shelling, pruning on sets of placed facets already known to fail.

    Returns ``shellable=None`` when the facet count exceeds ``limit``. The void
    complex counts as shellable.
    """
    if not is_pure(c):
        return Shelling(False, None, "not pure")
    if len(c.facets) > limit:
        return Shelling(None, None, f"undecided: limit of {limit} facets")
    facets = [frozenset(f) for f in c.sorted_facets()]
    dead: set[frozenset[int]] = set()

    def extend(order: list[int]) -> list[int] | None:
        if len(order) == len(facets):
            return order
        placed = frozenset(order)
        if placed in dead:
            return None
        for k, facet in enumerate(facets):
            if k not in placed and _extends_shelling([facets[i] for i in order], facet):
                found = extend(order + [k])
                if found is not None:
                    return found
        dead.add(placed)
        return None

    found = extend([])
    if found is None:
        return Shelling(False, None, "no shelling order")
    return Shelling(True, tuple(c.sort_face(facets[k]) for k in found))


# cover ideals


def cover_ideal(g: Graph) -> SquarefreeMonomialIdeal:
    return make_ideal(g.vertices, minimal_vertex_covers(g))


def _split_ideals(g: Graph, lab: VwcLabeling) -> tuple[SquarefreeMonomialIdeal, ...]:
    x1, y1 = lab.pairs[0]
    if g.degree(y1) != 1:
        raise SplittingError(f"y_1 = {y1} has degree {g.degree(y1)}, expected 1")
    g_prime = remove_vertices(g, closed_neighborhood(g, x1))
    g_second = remove_vertices(g, closed_neighborhood(g, y1))
    neighborhood = g.neighbors(x1)

    def lift(h: Graph) -> SquarefreeMonomialIdeal:
        return make_ideal(g.vertices, cover_ideal(h).generators)

    left = lift(g_second).times({x1})
    right = lift(g_prime).times(neighborhood)
    return cover_ideal(g), left, right, lift(g_prime).times(neighborhood | {x1})


def cover_ideal_splitting_check(g: Graph, lab: VwcLabeling) -> bool:
    """Check the splitting of the cover ideal along the first pair.

    With N = N(x_1), G' = G minus N[x_1] and G'' = G minus N[y_1]:
    (1) I(G)^v = x_1 I(G'')^v + x_N I(G')^v and
    (2) x_1 I(G'')^v intersected with x_N I(G')^v equals x_1 x_N I(G')^v.

    Raises:
        SplittingError: If lab cannot be brought to (**) or y_1 does not have degree one
    """
    if not satisfies_star_star(g, lab):
        relabeled = relabel_for_star_star(g, lab)
        if relabeled is None:
            raise SplittingError("labeling admits no (**) reordering")
        lab = relabeled
    whole, left, right, overlap = _split_ideals(g, lab)
    first = whole.generators == (left + right).generators
    second = left.intersect(right).generators == overlap.generators
    if not (first and second):
        logger.warning(f"cover ideal splitting failed: sum identity {first}, intersection identity {second}")
    return first and second
