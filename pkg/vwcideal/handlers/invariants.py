import logging
import time
import typing

import vwcideal.data.edgelist as edgelist
import vwcideal.data.report as report
from vwcideal.core.graph import Graph, max_3disjoint
from vwcideal.core.labeling import VwcLabeling
from vwcideal.service.classify import Classification, classify
from vwcideal.service.complexes import (
    DEFAULT_SHELLING_LIMIT,
    graph_is_vertex_decomposable,
    independence_complex,
    is_pure,
    is_pure_shellable,
)
from vwcideal.service.homology import (
    DEFAULT_HOMOLOGY_CAP,
    Field,
    OracleLimitError,
    betti_table_hochster,
    is_cohen_macaulay_reisner,
    projective_dimension_of_dual,
    regularity,
)
from vwcideal.service.reduction import (
    acyclic_reduction,
    antichain_regularity,
    associated_primes,
    build_semidigraph,
    is_transitively_closed,
)

logger = logging.getLogger(__name__)

SKIPPED_ORACLE = "skipped: oracle limit"
SKIPPED_NOT_VWC = "skipped: not very well-covered"
SKIPPED_SHELLING = "skipped: shelling limit"


class FieldInvariants(typing.TypedDict):
    reg: int
    pd_dual: int
    betti: dict[str, int]
    stripped: list[str]
    cohen_macaulay: bool
    reg_ghat: typing.NotRequired[int]
    pd_dual_ghat: typing.NotRequired[int]


class ComplexInvariants(typing.TypedDict):
    pure: bool
    shellable: bool | str
    vertex_decomposable: bool | str


class ReductionInvariants(typing.TypedDict):
    t: int
    components: list[list[int]]
    transitively_closed: bool
    semidigraph: str
    ghat: str
    dhat: str


class AntichainInvariants(typing.TypedDict):
    value: int
    via_dg: int
    via_dhat: int
    witness: list[int]


class Report(typing.TypedDict):
    schema: int
    digest: str
    vertices: int
    edges: int
    classification: dict[str, typing.Any]
    a: int
    a_witness: list[list[str]]
    antichain: AntichainInvariants | str
    reduction: ReductionInvariants | str
    ass: list[list[str]] | str
    complex: ComplexInvariants | str
    homology: dict[str, FieldInvariants | str]
    theorems: dict[str, typing.Any]
    timing: typing.NotRequired[dict[str, float]]


def _field_invariants(g: Graph, k: Field, cap: int, ghat: Graph | None) -> FieldInvariants | str:
    try:
        table = betti_table_hochster(g, k, cap)
        entry: FieldInvariants = {
            "reg": table.regularity,
            "pd_dual": projective_dimension_of_dual(g, k, cap),
            "betti": table.to_report()["betti"],
            "stripped": list(table.stripped),
            "cohen_macaulay": is_cohen_macaulay_reisner(independence_complex(g), k),
        }
        if ghat is not None:
            entry["reg_ghat"] = regularity(ghat, k, cap)
            entry["pd_dual_ghat"] = projective_dimension_of_dual(ghat, k, cap)
    except OracleLimitError as e:
        logger.warning(f"{k} homology skipped: {e}")
        return SKIPPED_ORACLE
    return entry


def _complex_invariants(g: Graph, cap: int, shelling_limit: int) -> ComplexInvariants | str:
    if len(g.vertices) > cap:
        return SKIPPED_ORACLE
    c = independence_complex(g)
    shelling = is_pure_shellable(c, shelling_limit)
    return {
        "pure": is_pure(c),
        "shellable": SKIPPED_SHELLING if shelling.shellable is None else shelling.shellable,
        "vertex_decomposable": graph_is_vertex_decomposable(g).decomposable,
    }


def _vwc_invariants(g: Graph, lab: VwcLabeling) -> dict[str, typing.Any]:
    chain = antichain_regularity(g, lab)
    ar = acyclic_reduction(g, lab)
    d = build_semidigraph(g, lab)
    primes = associated_primes(g, lab)
    return {
        "antichain": {
            "value": chain.value,
            "via_dg": chain.via_dg,
            "via_dhat": chain.via_dhat,
            "witness": [i + 1 for i in chain.witness],
        },
        "reduction": {
            "t": ar.t,
            "components": [[i + 1 for i in c] for c in ar.partition.components],
            "transitively_closed": is_transitively_closed(d).closed,
            "semidigraph": edgelist.format_semidigraph(d),
            "ghat": edgelist.format_graph(ar.ghat),
            "dhat": edgelist.format_semidigraph(ar.dhat),
        },
        "ass": sorted((list(g.sort_vertices(p.cover(lab))) for p in primes), key=lambda s: [g.index[v] for v in s]),
        "ghat": ar.ghat,
    }


def _theorem_flags(
    a: int,
    homology: dict[str, FieldInvariants | str],
    vwc: dict[str, typing.Any] | None,
    cplx: ComplexInvariants | str,
) -> dict[str, typing.Any]:
    flags: dict[str, typing.Any] = {"katzman": {}, "terai": {}}
    if vwc is not None:
        chain = vwc["antichain"]
        flags["acyclic_lemma"] = chain["via_dg"] == chain["via_dhat"]
        flags["theorem_b"] = {}
        flags["reduction"] = {}
        flags["theorem_a"] = {}
    for name, entry in homology.items():
        if isinstance(entry, str):
            continue
        flags["katzman"][name] = entry["reg"] >= a
        flags["terai"][name] = entry["reg"] == entry["pd_dual"]
        if vwc is None:
            continue
        flags["theorem_b"][name] = entry["reg"] == a == vwc["antichain"]["value"]
        flags["reduction"][name] = entry["reg"] == entry["reg_ghat"] == entry["pd_dual_ghat"]
        if isinstance(cplx, dict) and isinstance(cplx["shellable"], bool):
            cm = entry["cohen_macaulay"]
            pure = cplx["pure"]
            flags["theorem_a"][name] = cm == (pure and cplx["shellable"]) == (pure and cplx["vertex_decomposable"])
    return flags


def compute_invariants(
    g: Graph,
    fields: typing.Sequence[Field] = (Field.GF2,),
    cap: int = DEFAULT_HOMOLOGY_CAP,
    shelling_limit: int = DEFAULT_SHELLING_LIMIT,
    timing: bool = False,
) -> Report:
    """Every invariant of g with the consistency flags between them.

    Homological fields beyond ``cap`` are marked skipped instead of failing; theorem
    flags appear only when both of their sides were computed.
    """
    started = time.perf_counter()
    classification: Classification = classify(g)
    a = max_3disjoint(g)

    vwc = _vwc_invariants(g, classification.labeling) if classification.labeling is not None else None
    ghat = vwc.pop("ghat") if vwc is not None else None
    homology = {str(k): _field_invariants(g, k, cap, ghat) for k in fields}
    cplx = _complex_invariants(g, cap, shelling_limit)

    result: Report = {
        "schema": report.SCHEMA_VERSION,
        "digest": report.graph_digest(g),
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "classification": classification.to_report(),
        "a": a.size,
        "a_witness": [list(e) for e in a.edges],
        "antichain": vwc["antichain"] if vwc is not None else SKIPPED_NOT_VWC,
        "reduction": vwc["reduction"] if vwc is not None else SKIPPED_NOT_VWC,
        "ass": vwc["ass"] if vwc is not None else SKIPPED_NOT_VWC,
        "complex": cplx,
        "homology": homology,
        "theorems": _theorem_flags(a.size, homology, vwc, cplx),
    }
    if timing:
        result["timing"] = {"seconds": round(time.perf_counter() - started, 3)}
    logger.info(f"invariants of graph {result['digest'][:12]}: a = {a.size}, status {classification.status}")
    return result
