import typing
from dataclasses import dataclass

from vwcideal.core.graph import Graph


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class VwcLabeling:
    """Perfect matching pairs (x_i, y_i) with X a minimal vertex cover and Y a maximal independent set.

    Index i is 0-based here; reports print it 1-based.
    """

    pairs: tuple[tuple[str, str], ...]

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def xs(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def ys(self) -> tuple[str, ...]:
        return tuple(y for _, y in self.pairs)

    def x(self, i: int) -> str:
        return self.pairs[i][0]

    def y(self, i: int) -> str:
        return self.pairs[i][1]

    def reorder(self, order: typing.Sequence[int]) -> "VwcLabeling":
        """Simultaneous relabeling: new pair k is old pair order[k]."""
        return VwcLabeling(tuple(self.pairs[i] for i in order))

    def to_report(self) -> list[list[str]]:
        return [[x, y] for x, y in self.pairs]


def validate_labeling(g: Graph, lab: VwcLabeling) -> None:
    """Check the (*) requirements of ``lab`` against ``g``.

    Raises:
        LabelingError: If the pairs are not a perfect matching of g, or Y is not independent
    """
    labels = [v for pair in lab.pairs for v in pair]
    if len(set(labels)) != len(labels):
        raise LabelingError("labeling repeats a vertex")
    if set(labels) != set(g.vertices):
        raise LabelingError("labeling does not partition the vertex set")
    for i, (x, y) in enumerate(lab.pairs):
        if not g.has_edge(x, y):
            raise LabelingError(f"pair {i + 1} ({x}, {y}) is not an edge")
    ys = set(lab.ys)
    for y in lab.ys:
        clash = g.neighbors(y) & ys
        if clash:
            raise LabelingError(f"Y side is not independent: {y}-{min(clash, key=g.index.__getitem__)}")
