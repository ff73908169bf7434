"""Shared test fixtures and utilities."""

import typing

from hypothesis import strategies as st

from vwcideal.core.graph import Graph, make_graph
from vwcideal.core.labeling import VwcLabeling
from vwcideal.service.generators import GeneratorConfig, random_any_graph, random_vwc, whisker


def make_path(*labels: str) -> Graph:
    return make_graph(labels, zip(labels, labels[1:]))


def make_cycle(*labels: str) -> Graph:
    return make_graph(labels, list(zip(labels, labels[1:])) + [(labels[-1], labels[0])])


def make_k2() -> Graph:
    return make_graph(["a", "b"], [("a", "b")])


def make_p4() -> Graph:
    return make_path("a", "b", "c", "d")


def make_c4() -> Graph:
    return make_cycle("a", "b", "c", "d")


def make_c5() -> Graph:
    return make_cycle("a", "b", "c", "d", "e")


def make_2k2() -> Graph:
    return make_graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])


def make_triangle() -> Graph:
    return make_cycle("a", "b", "c")


def make_whiskered_triangle() -> Graph:
    return whisker(make_triangle())


def make_labeling(*pairs: tuple[str, str]) -> VwcLabeling:
    return VwcLabeling(tuple(pairs))


@st.composite
def vwc_graphs(draw: typing.Callable[..., typing.Any], max_pairs: int = 3) -> Graph:
    """Seeded very well-covered graphs from the random generator."""
    n = draw(st.integers(min_value=1, max_value=max_pairs))
    seed = draw(st.integers(min_value=0, max_value=2**32))
    density = draw(st.floats(min_value=0.0, max_value=0.8))
    return random_vwc(GeneratorConfig(n, seed, density))


@st.composite
def any_graphs(draw: typing.Callable[..., typing.Any], max_vertices: int = 6) -> Graph:
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    seed = draw(st.integers(min_value=0, max_value=2**32))
    density = draw(st.floats(min_value=0.0, max_value=1.0))
    return random_any_graph(n, density, seed)
