import argparse
import enum
import logging
import sys
import typing

import vwcideal.core.logging as vwcideal_logging
import vwcideal.data.edgelist as edgelist
import vwcideal.data.report as report
import vwcideal.service.environment as env
from vwcideal.core.graph import GraphError
from vwcideal.handlers.invariants import compute_invariants
from vwcideal.handlers.suites import DEFAULT_CORPUS, CorpusConfig, CorpusKind, Suite, SuiteContext, run_suite
from vwcideal.service.classify import classify
from vwcideal.service.generators import GeneratorConfig, GeneratorError, GeneratorMode, generate
from vwcideal.service.homology import DEFAULT_HOMOLOGY_CAP, Field, OracleLimitError

logger = logging.getLogger(__name__)


class ExitCode(enum.IntEnum):
    OK = 0
    PROPERTY_FAILURE = 1
    INPUT_ERROR = 2
    CAP_EXCEEDED = 3
    INTERRUPTED = 130


FIELD_CHOICES = {"gf2": (Field.GF2,), "q": (Field.RATIONALS,), "both": (Field.GF2, Field.RATIONALS)}


def _fields(choice: str | None) -> tuple[Field, ...]:
    if choice is None:
        return (env.get_field(),)
    return FIELD_CHOICES[choice]


def _cap(value: int | None) -> int:
    cap = env.get_homology_cap() if value is None else value
    if cap > DEFAULT_HOMOLOGY_CAP:
        logger.warning(f"homology cap {cap} exceeds the default {DEFAULT_HOMOLOGY_CAP}")
    return cap


def parse_relation(text: str) -> list[tuple[int, int]]:
    """``"1<2,2<3"`` as 0-based pairs."""
    pairs = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        left, sep, right = item.partition("<")
        if not sep:
            raise GeneratorError(f"relation item {item!r} is not of the form i<j")
        try:
            pairs.append((int(left) - 1, int(right) - 1))
        except ValueError as e:
            raise GeneratorError(f"relation item {item!r} is not of the form i<j") from e
    return pairs


def cmd_classify(args: argparse.Namespace) -> ExitCode:
    g = edgelist.read_graph(args.path)
    result = {
        "schema": report.SCHEMA_VERSION,
        "digest": report.graph_digest(g),
        "classification": classify(g).to_report(),
    }
    sys.stdout.write(report.render(result, args.format))
    return ExitCode.OK


def cmd_invariants(args: argparse.Namespace) -> ExitCode:
    g = edgelist.read_graph(args.path)
    result = compute_invariants(g, _fields(args.field), _cap(args.cap), env.get_shelling_limit(), args.timing)
    sys.stdout.write(report.render(dict(result), args.format))
    return ExitCode.OK


def cmd_verify(args: argparse.Namespace) -> ExitCode:
    suite = Suite(args.suite)
    kind = CorpusKind.ANY if args.random_any_graph else DEFAULT_CORPUS.get(suite, CorpusKind.VWC)
    corpus_cfg = CorpusConfig(kind, args.n, args.exhaustive, args.seed, args.count)
    ctx = SuiteContext(_fields(args.field), _cap(args.cap), env.get_shelling_limit())
    workers = env.get_workers() if args.workers is None else args.workers
    try:
        summary = run_suite(suite, corpus_cfg, ctx, workers)
    except OracleLimitError as e:
        logger.error(f"{suite} aborted: {e}")
        return ExitCode.CAP_EXCEEDED

    if args.format == "json":
        sys.stdout.write(report.to_json(dict(summary)))
    else:
        sys.stdout.write(report.suite_text(dict(summary)))
    if args.save:
        report.write_summary(env.get_result_dir() / f"{suite}_seed{args.seed}.json", dict(summary))
    return ExitCode.PROPERTY_FAILURE if summary["failed"] else ExitCode.OK


def cmd_generate(args: argparse.Namespace) -> ExitCode:
    mode = GeneratorMode(args.mode)
    base = edgelist.read_graph(args.input) if args.input else None
    relation = parse_relation(args.relation)
    graphs = []
    rounds = args.count if mode is GeneratorMode.RANDOM else 1
    for offset in range(rounds):
        cfg = GeneratorConfig(args.n, args.seed + offset, args.density, mode)
        graphs.extend(generate(cfg, base, relation))
    sys.stdout.write("\n".join(edgelist.format_graph(g) for g in graphs))
    return ExitCode.OK


def _add_common(parser: argparse.ArgumentParser, homology: bool = False) -> None:
    parser.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text)")
    if homology:
        parser.add_argument(
            "--field", choices=sorted(FIELD_CHOICES), default=None, help="Coefficient field (default: VWCIDEAL_FIELD)"
        )
        parser.add_argument(
            "--cap", type=int, default=None, help="Vertex cap of the homology oracle (default: VWCIDEAL_HOMOLOGY_CAP)"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vwcideal", description="Edge ideals of very well-covered graphs.")
    commands = parser.add_subparsers(dest="command", required=True)

    classify_parser = commands.add_parser("classify", help="Classify a graph from an edge-list file")
    classify_parser.add_argument("path", help="Edge-list file, or - for standard input")
    _add_common(classify_parser)
    classify_parser.set_defaults(handler=cmd_classify)

    invariants_parser = commands.add_parser("invariants", help="Compute every invariant of a graph")
    invariants_parser.add_argument("path", help="Edge-list file, or - for standard input")
    invariants_parser.add_argument("--timing", action="store_true", help="Add wall-clock timing to the report")
    _add_common(invariants_parser, homology=True)
    invariants_parser.set_defaults(handler=cmd_invariants)

    verify_parser = commands.add_parser("verify", help="Run a verification suite")
    verify_parser.add_argument("suite", choices=[str(s) for s in Suite])
    verify_parser.add_argument(
        "--n", type=int, default=3, help="Pair bound of random graphs, vertex bound with --random-any-graph"
    )
    verify_parser.add_argument(
        "--exhaustive", type=int, default=2, help="Enumerate every labeled graph up to this many pairs"
    )
    verify_parser.add_argument("--seed", type=int, default=0)
    verify_parser.add_argument("--count", type=int, default=50, help="Number of random graphs")
    verify_parser.add_argument("--random-any-graph", action="store_true", help="Use arbitrary random graphs")
    verify_parser.add_argument("--workers", type=int, default=None, help="Worker processes (default: VWCIDEAL_WORKERS)")
    verify_parser.add_argument("--save", action="store_true", help="Write the summary into VWCIDEAL_RESULT_DIR")
    _add_common(verify_parser, homology=True)
    verify_parser.set_defaults(handler=cmd_verify)

    generate_parser = commands.add_parser("generate", help="Emit generated graphs as edge lists")
    generate_parser.add_argument("--mode", choices=[str(m) for m in GeneratorMode], default=str(GeneratorMode.RANDOM))
    generate_parser.add_argument("--n", type=int, default=3, help="Pair count")
    generate_parser.add_argument("--seed", type=int, default=0)
    generate_parser.add_argument("--density", type=float, default=0.5)
    generate_parser.add_argument("--count", type=int, default=1, help="Random graphs to emit")
    generate_parser.add_argument("--relation", default="", help='Strict order for poset mode, e.g. "1<2,2<3"')
    generate_parser.add_argument("--input", default=None, help="Edge-list file to whisker")
    generate_parser.set_defaults(handler=cmd_generate)
    return parser


def main(argv: typing.Sequence[str] | None = None) -> int:
    vwcideal_logging.setup_logging(env.get_log_level(), env.get_log_dir())
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (edgelist.EdgeListError, GraphError, GeneratorError) as e:
        logger.error(f"input error: {e}")
        return ExitCode.INPUT_ERROR
    except OracleLimitError as e:
        logger.error(f"{e}")
        return ExitCode.CAP_EXCEEDED
    except KeyboardInterrupt:
        logger.warning("interrupt signal received, exiting")
        return ExitCode.INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
