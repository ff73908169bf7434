import enum
import itertools
import logging
import typing
from collections import defaultdict
from dataclasses import dataclass, field

from vwcideal.core.graph import Graph
from vwcideal.core.ideal import SquarefreeMonomialIdeal, edge_ideal, make_ideal
from vwcideal.core.linalg import gf2_rank, rational_rank
from vwcideal.service.complexes import SimplicialComplex, cover_ideal, link

logger = logging.getLogger(__name__)

DEFAULT_HOMOLOGY_CAP = 16


class Field(enum.StrEnum):
    GF2 = "gf2"
    RATIONALS = "q"


class OracleLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} of S/J for a square-free monomial ideal J.

    ``stripped`` lists the variables left out of the sweep because no generator uses
    them; they do not change any Betti number.
    """

    entries: dict[tuple[int, int], int]
    field: Field
    stripped: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.entries:
            return
        if any(count < 0 for count in self.entries.values()):
            raise ValueError("Betti numbers must be nonnegative")

    def _nonzero(self) -> list[tuple[int, int]]:
        keys = [key for key, count in self.entries.items() if count]
        if not keys:
            raise ValueError("Betti table of the zero module")
        return keys

    @property
    def regularity(self) -> int:
        return max(j - i for i, j in self._nonzero())

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _ in self._nonzero())

    def to_text(self) -> str:
        """Rows i, columns j - i; zeros print as dots."""
        if not self.entries:
            return "(zero module)"
        pd, reg = self.projective_dimension, self.regularity
        width = max(len(str(c)) for c in self.entries.values()) + 1
        header = "    " + "".join(f"{d:>{width}}" for d in range(reg + 1))
        lines = [header]
        for i in range(pd + 1):
            cells = [self.entries.get((i, i + d), 0) for d in range(reg + 1)]
            lines.append(f"{i:>2}: " + "".join(f"{c if c else '.':>{width}}" for c in cells))
        return "\n".join(lines)

    def to_report(self) -> dict[str, typing.Any]:
        return {
            "field": str(self.field),
            "betti": {f"{i},{j}": c for (i, j), c in sorted(self.entries.items()) if c},
            "reg": self.regularity,
            "pd": self.projective_dimension,
            "stripped": list(self.stripped),
        }


def _rank(field_: Field, rows: list[dict[int, int]], n_cols: int) -> int:
    if field_ is Field.GF2:
        return gf2_rank([sum(1 << c for c, v in row.items() if v % 2) for row in rows], n_cols)
    return rational_rank(rows, n_cols)


def _boundary(faces: list[int], lower: list[int]) -> list[dict[int, int]]:
    position = {mask: r for r, mask in enumerate(lower)}
    rows = []
    for mask in faces:
        row = {}
        sign = 1
        bits = mask
        while bits:
            low = bits & -bits
            row[position[mask ^ low]] = sign
            sign = -sign
            bits ^= low
        rows.append(row)
    return rows


def _reduced_ranks(faces_by_size: list[list[int]], field_: Field) -> list[int]:
    """Reduced homology ranks from face bitmasks grouped by size; entry s is dimension s - 1."""
    if not faces_by_size or not faces_by_size[0]:
        return []
    sizes = len(faces_by_size)
    boundary_ranks = [0] * (sizes + 1)
    for s in range(1, sizes):
        if faces_by_size[s]:
            rows = _boundary(faces_by_size[s], faces_by_size[s - 1])
            boundary_ranks[s] = _rank(field_, rows, len(faces_by_size[s - 1]))
    return [len(faces_by_size[s]) - boundary_ranks[s] - boundary_ranks[s + 1] for s in range(sizes)]


def reduced_homology_ranks(c: SimplicialComplex, k: Field = Field.GF2) -> list[int]:
    """Ranks of reduced homology in dimensions -1 .. dim c; empty for the void complex."""
    bit = {v: 1 << i for i, v in enumerate(c.vertices)}
    grouped: dict[int, list[int]] = defaultdict(list)
    for face in c.faces():
        grouped[len(face)].append(sum(bit[v] for v in face))
    if not grouped:
        return []
    return _reduced_ranks([sorted(grouped[s]) for s in range(max(grouped) + 1)], k)


def is_cohen_macaulay_reisner(c: SimplicialComplex, k: Field = Field.GF2) -> bool:
    """Reisner: every link (the empty face included) has vanishing reduced homology below its dimension."""
    for face in c.faces():
        lk = link(c, face)
        ranks = reduced_homology_ranks(lk, k)
        # ranks[s] is dimension s - 1, so s - 1 < dim means s <= dim
        if any(ranks[s] for s in range(min(lk.dimension + 1, len(ranks)))):
            logger.debug(f"Reisner fails at link of {sorted(face)}: ranks {ranks}")
            return False
    return True


def _faces_within(members: list[int], generators: list[int]) -> list[list[int]]:
    """Faces of the Stanley-Reisner complex restricted to ``members`` (single bits), grouped by size."""
    by_size: list[list[int]] = [[0]]
    watch = {b: [g for g in generators if g & b] for b in members}

    def extend(face: int, size: int, start: int) -> None:
        for t in range(start, len(members)):
            b = members[t]
            grown = face | b
            if any(g & grown == g for g in watch[b]):
                continue
            if len(by_size) <= size + 1:
                by_size.append([])
            by_size[size + 1].append(grown)
            extend(grown, size + 1, t + 1)

    extend(0, 0, 0)
    return [sorted(level) for level in by_size]


def betti_table_of_ideal(
    ideal: SquarefreeMonomialIdeal, k: Field = Field.GF2, cap: int = DEFAULT_HOMOLOGY_CAP
) -> BettiTable:
    """Hochster's formula: beta_{i,j} sums rank H~_{j-i-1} of the restriction to W over all |W| = j.

    Raises:
        OracleLimitError: If more than ``cap`` variables take part in the generators
    """
    used = set().union(*ideal.generators) if ideal.generators else set()
    variables = [v for v in ideal.variables if v in used]
    stripped = tuple(v for v in ideal.variables if v not in used)
    if len(variables) > cap:
        raise OracleLimitError(f"oracle limit: {len(variables)} vertices exceed cap {cap}")
    if ideal.is_unit:
        return BettiTable({}, k, stripped)

    bit = {v: 1 << i for i, v in enumerate(variables)}
    generators = [sum(bit[v] for v in m) for m in ideal.generators]
    entries: dict[tuple[int, int], int] = defaultdict(int)
    reg_so_far = 0
    for j in range(len(variables) + 1):
        for subset in itertools.combinations(range(len(variables)), j):
            ranks = _reduced_ranks(_faces_within([1 << t for t in subset], generators), k)
            for s, rank in enumerate(ranks):
                if rank:
                    entries[(j - s, j)] += rank
                    reg_so_far = max(reg_so_far, s)
        logger.debug(f"Hochster sweep through |W| = {j}: reg >= {reg_so_far}")
    return BettiTable(dict(entries), k, stripped)


def betti_table_hochster(g: Graph, k: Field = Field.GF2, cap: int = DEFAULT_HOMOLOGY_CAP) -> BettiTable:
    return betti_table_of_ideal(edge_ideal(g), k, cap)


def regularity(g: Graph, k: Field = Field.GF2, cap: int = DEFAULT_HOMOLOGY_CAP) -> int:
    """reg(R/I(G))."""
    return betti_table_hochster(g, k, cap).regularity


def projective_dimension_of_dual(g: Graph, k: Field = Field.GF2, cap: int = DEFAULT_HOMOLOGY_CAP) -> int:
    """pd of the cover ideal, read from the Betti table of S/I(G)^v shifted down by one."""
    dual = cover_ideal(g)
    if dual.is_unit:
        # edgeless graph: the cover ideal is the whole ring, a free module
        return 0
    return betti_table_of_ideal(make_ideal(g.vertices, dual.generators), k, cap).projective_dimension - 1


def terai_check(g: Graph, k: Field = Field.GF2, cap: int = DEFAULT_HOMOLOGY_CAP) -> bool:
    """reg(R/I(G)) = pd(I(G)^v)."""
    return regularity(g, k, cap) == projective_dimension_of_dual(g, k, cap)
