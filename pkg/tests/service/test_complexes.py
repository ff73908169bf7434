import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.conftest import (
    any_graphs,
    make_c4,
    make_k2,
    make_labeling,
    make_p4,
    make_path,
    make_whiskered_triangle,
    vwc_graphs,
)
from vwcideal.core.graph import closed_neighborhood, make_graph, relabel, remove_vertices
from vwcideal.service import complexes
from vwcideal.service.classify import Status, classify
from vwcideal.service.complexes import (
    ComplexError,
    SimplicialComplex,
    SplittingError,
    VertexDecomposer,
    canonical_form,
    cover_ideal,
    cover_ideal_splitting_check,
    deletion,
    dominance_pairs,
    facets_text,
    graph_is_vertex_decomposable,
    independence_complex,
    is_pure,
    is_pure_shellable,
    is_shedding_vertex,
    is_vertex_decomposable,
    link,
    make_complex,
)

SHARED_DECOMPOSER = VertexDecomposer()
P4_LABELING = make_labeling(("b", "a"), ("c", "d"))


class TestSimplicialComplex:
    def test_independence_complex_of_p4(self):
        assert independence_complex(make_p4()).sorted_facets() == [("a", "c"), ("a", "d"), ("b", "d")]

    def test_rejects_nested_facets(self):
        with pytest.raises(ComplexError, match="face of another facet"):
            SimplicialComplex(("a", "b"), frozenset({frozenset("a"), frozenset("ab")}))

    def test_dimensions(self):
        assert independence_complex(make_p4()).dimension == 1
        assert make_complex([], [[]]).dimension == -1
        assert make_complex(["a"], []).dimension == -2

    def test_faces_include_the_empty_face(self):
        faces = list(independence_complex(make_p4()).faces())
        assert len(faces) == 8
        assert faces[0] == frozenset()

    def test_facets_text(self):
        assert facets_text(independence_complex(make_c4())) == "a c\nb d"


class TestLinkAndDeletion:
    def test_link(self):
        lk = link(independence_complex(make_p4()), {"a"})
        assert lk.vertices == ("b", "c", "d")
        assert lk.sorted_facets() == [("c",), ("d",)]

    def test_deletion(self):
        assert deletion(independence_complex(make_p4()), {"a"}).sorted_facets() == [("c",), ("b", "d")]

    def test_link_of_a_facet_is_the_irrelevant_complex(self):
        lk = link(independence_complex(make_p4()), {"a", "c"})
        assert lk.facets == {frozenset()}

    def test_not_a_face(self):
        with pytest.raises(ComplexError, match="not a face"):
            link(independence_complex(make_p4()), {"a", "b"})


class TestIsPure:
    def test_p4(self):
        assert is_pure(independence_complex(make_p4()))

    def test_p3(self):
        assert not is_pure(independence_complex(make_path("a", "b", "c")))


class TestCanonicalForm:
    def test_isomorphic_complexes_share_a_key(self):
        left = make_complex("abc", ["ab", "c"])
        right = make_complex("xyz", ["z", "xy"])
        assert canonical_form(left)[0] == canonical_form(right)[0]


class TestVertexDecomposable:
    def test_shedding_vertex(self):
        c = independence_complex(make_p4())
        assert is_shedding_vertex(c, "b")
        assert not is_shedding_vertex(c, "a")

    def test_p4(self):
        result = is_vertex_decomposable(independence_complex(make_p4()))
        assert result.decomposable
        assert "shed" in result.certificate

    def test_c4(self):
        result = is_vertex_decomposable(independence_complex(make_c4()))
        assert not result.decomposable
        assert result.certificate is None
        assert result.reason.startswith("no shedding vertex")

    def test_simplex_and_void_are_base_cases(self):
        assert is_vertex_decomposable(make_complex("ab", ["ab"])).certificate == {"simplex": ["a", "b"]}
        assert is_vertex_decomposable(make_complex("a", [])).certificate == {"void": True}

    def test_dominance_pairs(self):
        assert dominance_pairs(make_p4()) == [("a", "b"), ("d", "c")]

    def test_whiskered_triangle(self):
        assert graph_is_vertex_decomposable(make_whiskered_triangle()).decomposable

    def test_shared_memo_across_vertex_orders(self):
        edges = [tuple(e.split()) for e in "x1 y1,x1 y2,x1 y3,x2 y2,x2 y3,y2 x4,x3 y3,y3 x4,x4 y4".split(",")]
        forward = make_graph(["x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4"], edges)
        backward = make_graph(reversed(forward.vertices), edges)
        decomposer = VertexDecomposer()
        for g in (forward, backward, forward):
            result = graph_is_vertex_decomposable(g, decomposer)
            assert result.decomposable
            assert result.certificate is not None

    def test_memo_is_scoped_to_the_caller(self):
        decomposer = VertexDecomposer()
        assert is_vertex_decomposable(independence_complex(make_p4()), decomposer=decomposer).decomposable
        assert decomposer.memo
        assert not hasattr(complexes, "_decomposer")

    def test_certificate_decides_unseen_complexes(self):
        assert VertexDecomposer().certificate(independence_complex(make_p4()))["shed"] in {"b", "c"}
        with pytest.raises(ComplexError, match="not vertex decomposable"):
            VertexDecomposer().certificate(independence_complex(make_c4()))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_invariant_under_vertex_permutations(self, data):
        g = data.draw(any_graphs(max_vertices=7))
        order = data.draw(st.permutations(g.vertices))
        expected = graph_is_vertex_decomposable(g).decomposable
        assert graph_is_vertex_decomposable(make_graph(order, g.edges), SHARED_DECOMPOSER).decomposable == expected
        renamed = relabel(g, dict(zip(g.vertices, order)))
        assert graph_is_vertex_decomposable(renamed, SHARED_DECOMPOSER).decomposable == expected

    @settings(max_examples=40, deadline=None)
    @given(any_graphs(max_vertices=7))
    def test_dominated_vertex_sheds(self, g):
        c = independence_complex(g)
        for _, y in dominance_pairs(g):
            assert is_shedding_vertex(c, y)
            without = graph_is_vertex_decomposable(remove_vertices(g, {y})).decomposable
            beyond = graph_is_vertex_decomposable(remove_vertices(g, closed_neighborhood(g, y))).decomposable
            if without and beyond:
                assert graph_is_vertex_decomposable(g).decomposable


class TestIsPureShellable:
    def test_p4(self):
        shelling = is_pure_shellable(independence_complex(make_p4()))
        assert shelling.shellable
        assert shelling.order == (("a", "c"), ("a", "d"), ("b", "d"))

    def test_c4(self):
        assert is_pure_shellable(independence_complex(make_c4())) == (False, None, "no shelling order")

    def test_not_pure(self):
        assert is_pure_shellable(independence_complex(make_path("a", "b", "c"))).reason == "not pure"

    def test_limit(self):
        shelling = is_pure_shellable(independence_complex(make_p4()), limit=2)
        assert shelling.shellable is None
        assert shelling.reason == "undecided: limit of 2 facets"

    def test_void_complex(self):
        assert is_pure_shellable(make_complex("a", [])).shellable

    @settings(max_examples=30, deadline=None)
    @given(vwc_graphs())
    def test_agrees_with_vertex_decomposability_and_classification(self, g):
        c = independence_complex(g)
        cohen_macaulay = classify(g).status is Status.VWC_COHEN_MACAULAY
        assert is_pure_shellable(c).shellable == graph_is_vertex_decomposable(g).decomposable == cohen_macaulay


class TestCoverIdeal:
    def test_c4(self):
        assert cover_ideal(make_c4()).to_text() == "(a*c, b*d)"

    def test_edgeless_graph_gives_unit_ideal(self):
        assert cover_ideal(make_graph(["a"])).is_unit

    def test_splitting_p4(self):
        assert cover_ideal_splitting_check(make_p4(), P4_LABELING)

    def test_splitting_k2(self):
        assert cover_ideal_splitting_check(make_k2(), make_labeling(("a", "b")))

    def test_splitting_relabels_for_star_star(self):
        g = make_graph(["x1", "y1", "x2", "y2"], [("x1", "y1"), ("x2", "y2"), ("x1", "y2")])
        assert cover_ideal_splitting_check(g, make_labeling(("x2", "y2"), ("x1", "y1")))

    def test_splitting_needs_acyclic_labeling(self):
        with pytest.raises(SplittingError, match="no"):
            cover_ideal_splitting_check(make_c4(), make_labeling(("b", "a"), ("d", "c")))

    def test_splitting_moves_the_pendant_pair_first(self):
        # y1 = b is not a pendant until pair (c, d) comes first
        g = make_graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d"), ("c", "b")])
        assert cover_ideal_splitting_check(g, make_labeling(("a", "b"), ("c", "d")))
