import pytest
from hypothesis import given, settings

from tests.conftest import (
    make_2k2,
    make_c4,
    make_k2,
    make_labeling,
    make_p4,
    make_triangle,
    make_whiskered_triangle,
    vwc_graphs,
)
from vwcideal.core.graph import minimal_vertex_covers
from vwcideal.core.labeling import LabelingError
from vwcideal.service.classify import Status, classify, find_vwc_labeling
from vwcideal.service.generators import whisker_labeling
from vwcideal.service.reduction import (
    SemiDigraph,
    acyclic_reduction,
    antichain_from_3disjoint,
    antichain_regularity,
    antichains,
    associated_primes,
    build_semidigraph,
    is_acyclic,
    is_antichain,
    is_transitively_closed,
    omega,
    reduction_identity_map,
    strong_components,
)

C4_LABELING = make_labeling(("b", "a"), ("d", "c"))
P4_LABELING = make_labeling(("b", "a"), ("c", "d"))


def chain(n: int) -> SemiDigraph:
    return SemiDigraph(n, frozenset((i, i + 1) for i in range(n - 1)), frozenset())


class TestSemiDigraph:
    def test_rejects_loop(self):
        with pytest.raises(ValueError, match="loop"):
            SemiDigraph(2, frozenset({(1, 1)}), frozenset())

    def test_rejects_unnormalized_undirected_edge(self):
        with pytest.raises(ValueError, match="normalized"):
            SemiDigraph(2, frozenset(), frozenset({(1, 0)}))

    def test_reach(self):
        d = chain(3)
        assert d.reaches(0, 2)
        assert not d.reaches(2, 0)


class TestBuildSemidigraph:
    def test_c4(self):
        d = build_semidigraph(make_c4(), C4_LABELING)
        assert d.directed == {(0, 1), (1, 0)}
        assert d.undirected == frozenset()

    def test_p4(self):
        d = build_semidigraph(make_p4(), P4_LABELING)
        assert d.directed == frozenset()
        assert d.undirected == {(0, 1)}

    def test_whiskered_triangle(self):
        d = build_semidigraph(make_whiskered_triangle(), whisker_labeling(make_triangle()))
        assert d.directed == frozenset()
        assert d.undirected == {(0, 1), (0, 2), (1, 2)}

    def test_invalid_labeling(self):
        with pytest.raises(LabelingError):
            build_semidigraph(make_c4(), make_labeling(("a", "c"), ("b", "d")))


class TestStrongComponents:
    def test_c4(self):
        assert strong_components(build_semidigraph(make_c4(), C4_LABELING)).components == ((0, 1),)

    def test_p4(self):
        assert strong_components(build_semidigraph(make_p4(), P4_LABELING)).components == ((0,), (1,))

    def test_chain(self):
        part = strong_components(chain(3))
        assert part.components == ((0,), (1,), (2,))
        assert part.component_of == (0, 1, 2)

    def test_topological_order_beats_index_order(self):
        d = SemiDigraph(2, frozenset({(1, 0)}), frozenset())
        assert strong_components(d).components == ((1,), (0,))


class TestIsTransitivelyClosed:
    def test_missing_shortcut(self):
        assert is_transitively_closed(chain(3)) == (False, (0, 1, 2))

    def test_undirected_rule(self):
        d = SemiDigraph(3, frozenset({(2, 1)}), frozenset({(0, 1)}))
        assert is_transitively_closed(d) == (False, (0, 1, 2))

    def test_p4(self):
        assert is_transitively_closed(build_semidigraph(make_p4(), P4_LABELING)).closed


class TestAcyclicReduction:
    def test_c4_collapses_to_k2(self):
        ar = acyclic_reduction(make_c4(), C4_LABELING)
        assert ar.t == 1
        assert ar.ghat.vertices == ("u1", "v1")
        assert ar.ghat.edges == {("u1", "v1")}

    def test_p4(self):
        ar = acyclic_reduction(make_p4(), P4_LABELING)
        assert ar.ghat.edges == {("u1", "v1"), ("u2", "v2"), ("u1", "u2")}
        assert is_acyclic(ar.dhat)

    def test_identity_map_on_cohen_macaulay_graph(self):
        ar = acyclic_reduction(make_p4(), P4_LABELING)
        assert reduction_identity_map(ar, P4_LABELING) == {"u1": "b", "v1": "a", "u2": "c", "v2": "d"}

    def test_identity_map_needs_singletons(self):
        ar = acyclic_reduction(make_c4(), C4_LABELING)
        with pytest.raises(ValueError, match="component 1 has 2 indices"):
            reduction_identity_map(ar, C4_LABELING)

    @settings(max_examples=30, deadline=None)
    @given(vwc_graphs())
    def test_reduction_is_cohen_macaulay(self, g):
        lab = find_vwc_labeling(g)
        ar = acyclic_reduction(g, lab)
        assert is_acyclic(ar.dhat)
        assert is_transitively_closed(build_semidigraph(g, lab)).closed
        assert classify(ar.ghat).status is Status.VWC_COHEN_MACAULAY


class TestAntichains:
    def test_c4(self):
        assert antichains(build_semidigraph(make_c4(), C4_LABELING)) == [(), (0,), (1,)]

    def test_p4(self):
        assert antichains(build_semidigraph(make_p4(), P4_LABELING)) == [(), (0,), (0, 1), (1,)]

    def test_chain(self):
        assert antichains(chain(2)) == [(), (0,), (1,)]

    def test_is_antichain(self):
        assert not is_antichain(chain(3), [0, 2])


class TestOmega:
    def test_c4(self):
        d = build_semidigraph(make_c4(), C4_LABELING)
        assert omega(d, strong_components(d), [0]) == {0, 1}

    def test_empty_antichain(self):
        d = chain(3)
        assert omega(d, strong_components(d), []) == frozenset()

    def test_upward_closure(self):
        d = SemiDigraph(3, frozenset({(0, 1), (1, 2), (0, 2)}), frozenset())
        assert omega(d, strong_components(d), [1]) == {1, 2}

    def test_not_an_antichain(self):
        d = chain(2)
        with pytest.raises(ValueError, match="not an antichain"):
            omega(d, strong_components(d), [0, 1])


class TestAssociatedPrimes:
    def test_c4(self):
        primes = associated_primes(make_c4(), C4_LABELING)
        assert {p.cover(C4_LABELING) for p in primes} == {frozenset("bd"), frozenset("ac")}

    def test_k2(self):
        lab = make_labeling(("a", "b"))
        assert [p.cover(lab) for p in associated_primes(make_k2(), lab)] == [frozenset("a"), frozenset("b")]

    def test_whiskered_triangle_has_four(self):
        g = make_whiskered_triangle()
        assert len(associated_primes(g, find_vwc_labeling(g))) == 4

    @settings(max_examples=30, deadline=None)
    @given(vwc_graphs())
    def test_primes_are_minimal_covers(self, g):
        lab = find_vwc_labeling(g)
        primes = associated_primes(g, lab)
        assert sorted(sorted(p.cover(lab)) for p in primes) == sorted(sorted(c) for c in minimal_vertex_covers(g))


class TestAntichainRegularity:
    @pytest.mark.parametrize(
        ("graph", "labeling", "expected"),
        [
            (make_c4(), C4_LABELING, 1),
            (make_2k2(), make_labeling(("a", "b"), ("c", "d")), 2),
            (make_p4(), P4_LABELING, 1),
        ],
    )
    def test_values(self, graph, labeling, expected):
        result = antichain_regularity(graph, labeling)
        assert result.value == result.via_dg == result.via_dhat == expected

    def test_whiskered_triangle(self):
        g = make_whiskered_triangle()
        assert antichain_regularity(g, find_vwc_labeling(g)).value == 1

    def test_c4_witness(self):
        assert antichain_regularity(make_c4(), C4_LABELING).witness == (0,)


class TestAntichainFrom3Disjoint:
    def test_2k2(self):
        lab = make_labeling(("a", "b"), ("c", "d"))
        assert antichain_from_3disjoint(make_2k2(), lab, [("a", "b"), ("c", "d")]) == (0, 1)

    def test_xx_edge_takes_smaller_index(self):
        assert antichain_from_3disjoint(make_p4(), P4_LABELING, [("c", "b")]) == (0,)

    def test_rejects_y_edge(self):
        with pytest.raises(ValueError, match="two Y vertices"):
            antichain_from_3disjoint(make_c4(), C4_LABELING, [("a", "c")])
