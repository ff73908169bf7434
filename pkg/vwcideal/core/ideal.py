import typing
from dataclasses import dataclass
from functools import cached_property

from vwcideal.core.graph import Graph

Monomial = frozenset[str]


def minimalize(monomials: typing.Iterable[Monomial]) -> frozenset[Monomial]:
    """Drop every monomial divisible by another one in the collection."""
    candidates = sorted(set(monomials), key=len)
    kept: list[Monomial] = []
    for m in candidates:
        if not any(k <= m for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    """Square-free monomial ideal given by its minimal generators.

    A generator is the set of variables in the monomial. ``frozenset()`` is the
    monomial 1, so ``{frozenset()}`` is the unit ideal and an empty generator set
    is the zero ideal.
    """

    variables: tuple[str, ...]
    generators: frozenset[Monomial]

    def __post_init__(self) -> None:
        known = set(self.variables)
        for m in self.generators:
            if not m <= known:
                raise ValueError(f"generator uses unknown variables: {sorted(m - known)}")
        if minimalize(self.generators) != self.generators:
            raise ValueError("generators are not minimal under divisibility")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.variables)}

    @property
    def is_unit(self) -> bool:
        return frozenset() in self.generators

    def sorted_generators(self) -> list[tuple[str, ...]]:
        ordered = [tuple(sorted(m, key=self.index.__getitem__)) for m in self.generators]
        return sorted(ordered, key=lambda m: (len(m), [self.index[v] for v in m]))

    def __add__(self, other: "SquarefreeMonomialIdeal") -> "SquarefreeMonomialIdeal":
        return make_ideal(self.variables, self.generators | other.generators)

    def times(self, monomial: typing.Iterable[str]) -> "SquarefreeMonomialIdeal":
        """The ideal m*I (square-free product, so shared variables are absorbed)."""
        m = frozenset(monomial)
        return make_ideal(self.variables, (g | m for g in self.generators))

    def intersect(self, other: "SquarefreeMonomialIdeal") -> "SquarefreeMonomialIdeal":
        # square-free case: lcm is union
        return make_ideal(self.variables, (g | h for g in self.generators for h in other.generators))

    def to_text(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join("*".join(m) if m else "1" for m in self.sorted_generators()) + ")"


def make_ideal(
    variables: typing.Iterable[str], generators: typing.Iterable[typing.Iterable[str]]
) -> SquarefreeMonomialIdeal:
    return SquarefreeMonomialIdeal(tuple(variables), minimalize(frozenset(m) for m in generators))


def edge_ideal(g: Graph) -> SquarefreeMonomialIdeal:
    return make_ideal(g.vertices, g.edges)


def alexander_dual(ideal: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    """Generators of the dual are the minimal transversals of the generators of ``ideal``."""
    transversals: frozenset[Monomial] = frozenset({frozenset()})
    for generator in ideal.sorted_generators():
        grown: set[Monomial] = set()
        for t in transversals:
            if t.intersection(generator):
                grown.add(t)
            else:
                grown.update(t | {v} for v in generator)
        transversals = minimalize(grown)
    return SquarefreeMonomialIdeal(ideal.variables, transversals)
