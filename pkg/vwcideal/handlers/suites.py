"""Verification suites: each one checks a property on every graph of a corpus."""

import enum
import logging
import typing
from functools import partial
from multiprocessing import Pool

import numpy as np

import vwcideal.data.edgelist as edgelist
import vwcideal.data.report as report
from vwcideal.core.graph import Graph, is_pairwise_3disjoint, max_3disjoint, minimal_vertex_covers, relabel
from vwcideal.service.classify import (
    Status,
    all_vwc_labelings,
    check_unmixed_conditions,
    classify,
    relabel_for_star_star,
)
from vwcideal.service.complexes import (
    DEFAULT_SHELLING_LIMIT,
    cover_ideal_splitting_check,
    graph_is_vertex_decomposable,
    independence_complex,
    is_pure,
    is_pure_shellable,
)
from vwcideal.service.generators import (
    GeneratorConfig,
    canonical_labeling,
    enumerate_candidates,
    enumerate_vwc,
    random_any_graph,
    random_vwc,
)
from vwcideal.service.homology import (
    DEFAULT_HOMOLOGY_CAP,
    Field,
    OracleLimitError,
    is_cohen_macaulay_reisner,
    projective_dimension_of_dual,
    regularity,
)
from vwcideal.service.reduction import (
    acyclic_reduction,
    antichain_from_3disjoint,
    antichain_regularity,
    associated_primes,
    build_semidigraph,
    is_acyclic,
    is_antichain,
    is_transitively_closed,
    omega,
    reduction_identity_map,
    strong_components,
)

logger = logging.getLogger(__name__)


class Suite(enum.StrEnum):
    THEOREM_A = "theorem-a"
    THEOREM_B = "theorem-b"
    TERAI = "terai"
    KATZMAN = "katzman"
    ASS = "ass"
    REDUCTION = "reduction"
    SPLITTING = "splitting"
    UNMIXED = "unmixed"


class CorpusKind(enum.StrEnum):
    VWC = "vwc"
    ANY = "any"
    CANDIDATES = "candidates"


class SuiteContext(typing.NamedTuple):
    fields: tuple[Field, ...] = (Field.GF2,)
    cap: int = DEFAULT_HOMOLOGY_CAP
    shelling_limit: int = DEFAULT_SHELLING_LIMIT


class CorpusConfig(typing.NamedTuple):
    kind: CorpusKind = CorpusKind.VWC
    n: int = 3
    exhaustive: int = 2
    seed: int = 0
    count: int = 50


class GraphSkipped(Exception):
    """A check could not decide its property on this graph."""


class GraphOutcome(typing.TypedDict):
    digest: str
    graph: str
    failures: list[str]
    skipped: str | None


class SuiteSummary(typing.TypedDict):
    schema: int
    suite: str
    corpus: dict[str, typing.Any]
    fields: list[str]
    total: int
    passed: int
    failed: int
    skipped: int
    counterexamples: list[GraphOutcome]


def build_corpus(cfg: CorpusConfig) -> list[Graph]:
    """Exhaustive graphs up to ``cfg.exhaustive`` pairs, then ``cfg.count`` seeded random ones.

    The candidate corpus enumerates unfiltered candidates and follows them with the
    random very well-covered graphs.

    For the arbitrary-graph corpus ``cfg.n`` bounds the vertex count; otherwise it
    bounds the pair count of the random very well-covered graphs.
    """
    rng = np.random.default_rng(cfg.seed)
    corpus: list[Graph] = []
    match cfg.kind:
        case CorpusKind.CANDIDATES:
            for pairs in range(1, cfg.exhaustive + 1):
                corpus.extend(enumerate_candidates(pairs))
            corpus.extend(_random_vwc_corpus(cfg, rng))
        case CorpusKind.VWC:
            for pairs in range(1, cfg.exhaustive + 1):
                corpus.extend(enumerate_vwc(pairs))
            corpus.extend(_random_vwc_corpus(cfg, rng))
        case CorpusKind.ANY:
            for _ in range(cfg.count):
                vertices = int(rng.integers(1, cfg.n + 1))
                seed = int(rng.integers(2**63))
                density = float(rng.uniform(0.1, 0.9))
                corpus.append(random_any_graph(vertices, density, seed))
    return corpus


def _random_vwc_corpus(cfg: CorpusConfig, rng: np.random.Generator) -> typing.Iterator[Graph]:
    for _ in range(cfg.count):
        pairs = int(rng.integers(1, cfg.n + 1))
        seed = int(rng.integers(2**63))
        density = float(rng.uniform(0.1, 0.7))
        yield random_vwc(GeneratorConfig(pairs, seed, density))


def check_theorem_a(g: Graph, ctx: SuiteContext) -> list[str]:
    """Reisner CM, pure shellable and pure vertex decomposable agree, and match the (**) classification.

    Raises:
        GraphSkipped: If the shelling search hits its facet limit and the decided predicates agree
    """
    if len(g.vertices) > ctx.cap:
        raise OracleLimitError(f"oracle limit: {len(g.vertices)} vertices exceed cap {ctx.cap}")
    c = independence_complex(g)
    shelling = is_pure_shellable(c, ctx.shelling_limit)
    pure = is_pure(c)
    decomposable = pure and graph_is_vertex_decomposable(g).decomposable
    classified = classify(g).status is Status.VWC_COHEN_MACAULAY
    failures = []
    for k in ctx.fields:
        cm = is_cohen_macaulay_reisner(c, k)
        if shelling.shellable is None:
            agree = cm == decomposable == classified
        else:
            agree = cm == shelling.shellable == decomposable == classified
        if not agree:
            failures.append(
                f"{k}: cohen-macaulay {cm}, pure shellable {shelling.shellable}, "
                f"pure vertex decomposable {decomposable}, (**) relabeling {classified}"
            )
    if not failures and shelling.shellable is None:
        raise GraphSkipped(f"shelling search {shelling.reason}")
    return failures


def check_theorem_b(g: Graph, ctx: SuiteContext) -> list[str]:
    """reg equals a(G) and the antichain maximum on both semidirected graphs; reg does not depend on the field."""
    lab = classify(g).labeling
    if lab is None:
        return ["corpus graph is not very well-covered"]
    a = max_3disjoint(g).size
    chain = antichain_regularity(g, lab)
    failures = []
    regs = {}
    for k in ctx.fields:
        regs[k] = regularity(g, k, ctx.cap)
        if not regs[k] == a == chain.via_dg == chain.via_dhat:
            detail = f"antichain {chain.via_dg} on d_G and {chain.via_dhat} reduced"
            failures.append(f"{k}: reg {regs[k]}, a {a}, {detail}")
    if len(set(regs.values())) > 1:
        failures.append(f"reg depends on the field: { {str(k): r for k, r in regs.items()} }")
    matching = [(lab.x(i), lab.y(i)) for i in chain.witness]
    if not is_pairwise_3disjoint(g, matching):
        failures.append(f"edges {matching} of the antichain witness are not pairwise 3-disjoint")
    return failures


def check_terai(g: Graph, ctx: SuiteContext) -> list[str]:
    failures = []
    for k in ctx.fields:
        reg, pd = regularity(g, k, ctx.cap), projective_dimension_of_dual(g, k, ctx.cap)
        if reg != pd:
            failures.append(f"{k}: reg {reg} but pd of the cover ideal {pd}")
    return failures


def check_katzman(g: Graph, ctx: SuiteContext) -> list[str]:
    a = max_3disjoint(g).size
    failures = []
    for k in ctx.fields:
        reg = regularity(g, k, ctx.cap)
        if reg < a:
            failures.append(f"{k}: reg {reg} below a {a}")
    return failures


def check_ass(g: Graph, ctx: SuiteContext) -> list[str]:
    """Primes from antichains are the minimal vertex covers and each is closed upward along d_G."""
    lab = classify(g).labeling
    if lab is None:
        return ["corpus graph is not very well-covered"]
    primes = associated_primes(g, lab)
    covers = {frozenset(c) for c in minimal_vertex_covers(g)}
    found = {p.cover(lab) for p in primes}
    failures = []
    if found != covers or len(primes) != len(found):
        failures.append(f"{len(primes)} primes from antichains but {len(covers)} minimal vertex covers")
    d = build_semidigraph(g, lab)
    for p in primes:
        for i in p.ys:
            escaped = [j for j in range(lab.n) if d.reaches(i, j) and j not in p.ys]
            if escaped:
                failures.append(f"y_{i + 1} in prime but y_{escaped[0] + 1} above it is not")
    return failures


def check_reduction(g: Graph, ctx: SuiteContext) -> list[str]:
    """The reduction is acyclic, closed and Cohen-Macaulay, and keeps reg; a Cohen-Macaulay graph is its own."""
    classification = classify(g)
    lab = classification.labeling
    if lab is None:
        return ["corpus graph is not very well-covered"]
    failures = []
    d = build_semidigraph(g, lab)
    ar = acyclic_reduction(g, lab)
    if not is_acyclic(ar.dhat):
        failures.append("reduced semidirected graph has a directed cycle")
    for name, semi in (("d_G", d), ("reduced", ar.dhat)):
        closure = is_transitively_closed(semi)
        if not closure.closed:
            failures.append(f"{name} not transitively closed at {[i + 1 for i in closure.counterexample or ()]}")
    reduced_status = classify(ar.ghat).status
    if reduced_status is not Status.VWC_COHEN_MACAULAY:
        failures.append(f"reduction classified {reduced_status}")
    for k in ctx.fields:
        reg = regularity(g, k, ctx.cap)
        reg_hat = regularity(ar.ghat, k, ctx.cap)
        pd_hat = projective_dimension_of_dual(ar.ghat, k, ctx.cap)
        if not reg == reg_hat == pd_hat:
            failures.append(f"{k}: reg {reg}, reg of reduction {reg_hat}, pd of its cover ideal {pd_hat}")
    if classification.status is Status.VWC_COHEN_MACAULAY:
        renamed = relabel(ar.ghat, reduction_identity_map(ar, lab))
        if {frozenset(e) for e in renamed.edges} != {frozenset(e) for e in g.edges}:
            failures.append("Cohen-Macaulay graph differs from its reduction")
        witness = max_3disjoint(g)
        chain = antichain_from_3disjoint(g, lab, witness.edges)
        above = omega(d, strong_components(d), chain) if is_antichain(d, chain) else None
        if above is None or any(i in above and j in above for i, j in d.undirected):
            failures.append(f"3-disjoint set {list(witness.edges)} maps to an inadmissible set {chain}")
    return failures


def check_splitting(g: Graph, ctx: SuiteContext) -> list[str]:
    classification = classify(g)
    if classification.status is not Status.VWC_COHEN_MACAULAY or classification.labeling is None:
        return []
    if not cover_ideal_splitting_check(g, classification.labeling):
        return ["cover ideal does not split along the first pair"]
    return []


def check_unmixed(g: Graph, ctx: SuiteContext) -> list[str]:
    """Conditions (i), (ii) agree with equal-size minimal covers under the canonical labeling.

    For an unmixed graph every (*) labeling must then agree with the canonical one on
    conditions (i), (ii) and on whether a (**) relabeling exists.
    """
    lab = canonical_labeling(len(g.vertices) // 2)
    conditions = not check_unmixed_conditions(g, lab)
    unmixed = len({len(c) for c in minimal_vertex_covers(g)}) == 1
    if conditions != unmixed:
        return [f"conditions (i), (ii) say {conditions} but minimal covers say unmixed {unmixed}"]
    if not unmixed:
        return []
    acyclic = relabel_for_star_star(g, lab) is not None
    failures = []
    for other in all_vwc_labelings(g):
        if check_unmixed_conditions(g, other):
            failures.append(f"labeling {other.to_report()} violates conditions (i), (ii)")
        elif (relabel_for_star_star(g, other) is not None) != acyclic:
            failures.append(f"labeling {other.to_report()} disagrees on a (**) relabeling with the canonical one")
    return failures


CHECKS: dict[Suite, typing.Callable[[Graph, SuiteContext], list[str]]] = {
    Suite.THEOREM_A: check_theorem_a,
    Suite.THEOREM_B: check_theorem_b,
    Suite.TERAI: check_terai,
    Suite.KATZMAN: check_katzman,
    Suite.ASS: check_ass,
    Suite.REDUCTION: check_reduction,
    Suite.SPLITTING: check_splitting,
    Suite.UNMIXED: check_unmixed,
}

DEFAULT_CORPUS: dict[Suite, CorpusKind] = {
    Suite.TERAI: CorpusKind.ANY,
    Suite.KATZMAN: CorpusKind.ANY,
    Suite.UNMIXED: CorpusKind.CANDIDATES,
}


def _run_one(g: Graph, suite: Suite, ctx: SuiteContext) -> GraphOutcome:
    outcome: GraphOutcome = {
        "digest": report.graph_digest(g),
        "graph": edgelist.format_graph(g),
        "failures": [],
        "skipped": None,
    }
    try:
        outcome["failures"] = CHECKS[suite](g, ctx)
    except GraphSkipped as e:
        outcome["skipped"] = str(e)
    return outcome


def run_suite(suite: Suite, corpus_cfg: CorpusConfig, ctx: SuiteContext, workers: int = 1) -> SuiteSummary:
    """Check ``suite`` on every corpus graph; outcomes are ordered by graph digest.

    Raises:
        OracleLimitError: If some corpus graph exceeds the homology cap
    """
    corpus = build_corpus(corpus_cfg)
    logger.info(f"running {suite} on {len(corpus)} graphs with {workers} workers")
    check = partial(_run_one, suite=suite, ctx=ctx)
    if workers > 1:
        with Pool(processes=workers) as pool:
            outcomes = pool.map(check, corpus)
    else:
        outcomes = [check(g) for g in corpus]
    outcomes.sort(key=lambda o: (o["digest"], o["graph"]))
    counterexamples = [o for o in outcomes if o["failures"]]
    skipped = sum(1 for o in outcomes if o["skipped"])
    if skipped:
        logger.warning(f"{suite} skipped {skipped} of {len(outcomes)} graphs")
    for o in counterexamples:
        logger.error(f"{suite} failed on graph {o['digest'][:12]}: {o['failures']}")
    return {
        "schema": report.SCHEMA_VERSION,
        "suite": str(suite),
        "corpus": dict(corpus_cfg._asdict(), kind=str(corpus_cfg.kind)),
        "fields": [str(k) for k in ctx.fields],
        "total": len(outcomes),
        "passed": len(outcomes) - len(counterexamples) - skipped,
        "failed": len(counterexamples),
        "skipped": skipped,
        "counterexamples": counterexamples,
    }
