import enum
import itertools
import logging
import typing
from dataclasses import dataclass, field

from vwcideal.core.graph import Graph, is_well_covered, maximal_independent_sets
from vwcideal.core.labeling import VwcLabeling, validate_labeling
from vwcideal.service.reduction import build_semidigraph, strong_components

logger = logging.getLogger(__name__)


class Status(enum.StrEnum):
    NOT_WELL_COVERED = "NotWellCovered"
    WELL_COVERED_NOT_VWC = "WellCoveredNotVwc"
    # unreachable for very well-covered graphs; reported if the condition check ever disagrees
    VWC_NOT_UNMIXED = "VwcNotUnmixed"
    VWC_UNMIXED_NOT_CM = "VwcUnmixedNotCM"
    VWC_COHEN_MACAULAY = "VwcCohenMacaulay"


class Violation(typing.NamedTuple):
    condition: str
    indices: tuple[int, ...]
    edge: tuple[str, str] | None
    detail: str

    def to_report(self) -> dict[str, typing.Any]:
        return {
            "condition": self.condition,
            "indices": [i + 1 for i in self.indices],
            "edge": list(self.edge) if self.edge else None,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Classification:
    status: Status
    labeling: VwcLabeling | None
    height: int
    violations: tuple[Violation, ...] = field(default=())

    def to_report(self) -> dict[str, typing.Any]:
        return {
            "status": str(self.status),
            "n": self.height,
            "pairs": self.labeling.to_report() if self.labeling else None,
            "violations": [v.to_report() for v in self.violations],
        }


def iter_perfect_matchings(g: Graph) -> typing.Iterator[tuple[tuple[str, str], ...]]:
    """Perfect matchings in lexicographic order: the first free vertex takes its free neighbors in vertex order."""
    if len(g.vertices) % 2:
        return
    partner: dict[str, str] = {}

    def stranded() -> bool:
        return any(v not in partner and not any(w not in partner for w in g.adjacency[v]) for v in g.vertices)

    def extend(pairs: tuple[tuple[str, str], ...]) -> typing.Iterator[tuple[tuple[str, str], ...]]:
        free = next((v for v in g.vertices if v not in partner), None)
        if free is None:
            yield pairs
            return
        for w in g.sort_vertices(g.adjacency[free]):
            if w in partner:
                continue
            partner[free], partner[w] = w, free
            if not stranded():
                yield from extend(pairs + ((free, w),))
            del partner[free], partner[w]

    yield from extend(())


def _y_preference(g: Graph, pair: tuple[str, str]) -> list[str]:
    # lower degree first; on a tie the later vertex, so x takes the first label
    return sorted(pair, key=lambda v: (g.degree(v), -g.index[v]))


def _independent_transversal(g: Graph, matching: tuple[tuple[str, str], ...]) -> dict[int, str] | None:
    owner = {v: k for k, pair in enumerate(matching) for v in pair}
    other = {v: w for pair in matching for v, w in (pair, pair[::-1])}

    def propagate(state: dict[int, str], k: int, y: str) -> dict[int, str] | None:
        state = dict(state)
        queue = [(k, y)]
        while queue:
            k, y = queue.pop()
            if k in state:
                if state[k] != y:
                    return None
                continue
            state[k] = y
            for w in g.adjacency[y]:
                if owner[w] != k:
                    # w cannot join Y, so its partner does
                    queue.append((owner[w], other[w]))
        return state

    def search(state: dict[int, str], k: int) -> dict[int, str] | None:
        while k < len(matching) and k in state:
            k += 1
        if k == len(matching):
            return state
        for y in _y_preference(g, matching[k]):
            grown = propagate(state, k, y)
            if grown is not None:
                found = search(grown, k + 1)
                if found is not None:
                    return found
        return None

    return search({}, 0)


def find_vwc_labeling(g: Graph, check: bool = True) -> VwcLabeling | None:
    """Construct a (*) labeling.

    Takes the first perfect matching in lexicographic order, then chooses the Y side
    pair by pair with unit propagation and backtracking. Each pair tries its lower degree
    endpoint as y first, and on a tie the endpoint later in vertex order, so a pendant
    vertex becomes y and x keeps the earlier label. On P4 a-b-c-d this yields (b, a), (c, d).

    Args:
        g: Graph to label
        check: Verify that g is very well-covered first; callers that already know can skip it

    Returns:
        The labeling, or None when g is not very well-covered
    """
    if check and not is_well_covered(g).very_well_covered:
        return None
    matching = next(iter_perfect_matchings(g), None)
    if matching is None:
        return None
    chosen = _independent_transversal(g, matching)
    if chosen is None:
        return None
    pairs = tuple((pair[0] if chosen[k] == pair[1] else pair[1], chosen[k]) for k, pair in enumerate(matching))
    return VwcLabeling(pairs)


def all_vwc_labelings(g: Graph) -> list[VwcLabeling]:
    """Every valid (*) labeling: each perfect matching with each independent choice of Y."""
    labelings = []
    for matching in iter_perfect_matchings(g):
        for flips in itertools.product((False, True), repeat=len(matching)):
            pairs = tuple((b, a) if flip else (a, b) for (a, b), flip in zip(matching, flips))
            ys = {y for _, y in pairs}
            if all(not (g.adjacency[y] & ys) for y in ys):
                labelings.append(VwcLabeling(pairs))
    return labelings


def check_unmixed_conditions(g: Graph, lab: VwcLabeling) -> list[Violation]:
    """Conditions (i) and (ii) on the labeled graph.

    (i) z_i x_j and y_j x_k edges force z_i x_k, for distinct i, j, k and z_i in {x_i, y_i};
    (ii) an edge x_i y_j forbids the edge x_i x_j.

    Raises:
        LabelingError: If lab is not a valid labeling of g
    """
    validate_labeling(g, lab)
    violations = []
    for i, j, k in itertools.permutations(range(lab.n), 3):
        if not g.has_edge(lab.y(j), lab.x(k)):
            continue
        for z in (lab.x(i), lab.y(i)):
            if g.has_edge(z, lab.x(j)) and not g.has_edge(z, lab.x(k)):
                detail = f"{z}{lab.x(j)} and {lab.y(j)}{lab.x(k)} are edges but {z}{lab.x(k)} is not"
                violations.append(Violation("i", (i, j, k), (z, lab.x(k)), detail))
    for i, j in itertools.permutations(range(lab.n), 2):
        if g.has_edge(lab.x(i), lab.y(j)) and g.has_edge(lab.x(i), lab.x(j)):
            detail = f"{lab.x(i)}{lab.y(j)} and {lab.x(i)}{lab.x(j)} are both edges"
            violations.append(Violation("ii", (i, j), (lab.x(i), lab.x(j)), detail))
    return violations


def satisfies_star_star(g: Graph, lab: VwcLabeling) -> bool:
    """x_i y_j in E implies i <= j."""
    return all(i <= j for i, j in itertools.product(range(lab.n), repeat=2) if g.has_edge(lab.x(i), lab.y(j)))


def relabel_for_star_star(g: Graph, lab: VwcLabeling) -> VwcLabeling | None:
    """Reorder the pairs along the topological order of the strong components of d_G.

    Returns:
        The reordered labeling, or None if some strong component holds two or more indices
    """
    part = strong_components(build_semidigraph(g, lab))
    if any(len(c) > 1 for c in part.components):
        return None
    return lab.reorder([c[0] for c in part.components])


def _cycle_violation(g: Graph, lab: VwcLabeling) -> Violation:
    d = build_semidigraph(g, lab)
    component = next(c for c in strong_components(d).components if len(c) > 1)
    i, j = next((i, j) for i, j in itertools.permutations(component, 2) if (i, j) in d.directed)
    detail = f"indices {[c + 1 for c in component]} lie on a directed cycle of d_G"
    return Violation("**", component, (lab.x(i), lab.y(j)), detail)


def classify(g: Graph) -> Classification:
    """Well-covered test, very well-covered test, labeling, conditions (i) and (ii), then (**)."""
    independent = maximal_independent_sets(g)
    height = len(g.vertices) - max(len(s) for s in independent)
    wc = is_well_covered(g)

    if not wc.well_covered:
        if wc.witness:
            small, large = wc.witness
            detail = f"maximal independent sets {list(small)} and {list(large)} differ in size"
        else:
            detail = "graph has isolated vertices"
        result = Classification(Status.NOT_WELL_COVERED, None, height, (Violation("well-covered", (), None, detail),))
    elif not wc.very_well_covered:
        detail = f"{len(g.vertices)} vertices but independence number {len(g.vertices) - height}"
        result = Classification(
            Status.WELL_COVERED_NOT_VWC, None, height, (Violation("very-well-covered", (), None, detail),)
        )
    else:
        lab = find_vwc_labeling(g, check=False)
        if lab is None:
            raise RuntimeError("very well-covered graph without a (*) labeling")
        violations = check_unmixed_conditions(g, lab)
        if violations:
            logger.error(f"very well-covered graph fails conditions (i)/(ii): {violations}")
            result = Classification(Status.VWC_NOT_UNMIXED, lab, height, tuple(violations))
        else:
            relabeled = relabel_for_star_star(g, lab)
            if relabeled is None:
                result = Classification(Status.VWC_UNMIXED_NOT_CM, lab, height, (_cycle_violation(g, lab),))
            else:
                result = Classification(Status.VWC_COHEN_MACAULAY, relabeled, height)

    logger.info(f"classified graph on {len(g.vertices)} vertices as {result.status}")
    return result
