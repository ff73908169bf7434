import logging
import pathlib
import sys

from vwcideal.core.graph import Edge, Graph, isolated_vertices, make_graph
from vwcideal.service.reduction import SemiDigraph

logger = logging.getLogger(__name__)

STDIN = "-"


class EdgeListError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    One edge per line as two whitespace-separated labels, a single label declares a
    vertex, blank lines and lines starting with '#' are skipped. Vertices are ordered
    by first appearance.

    Raises:
        EdgeListError: On a malformed line, a loop, a repeated edge, or no vertices at all
    """
    vertices: dict[str, None] = {}
    edges: list[Edge] = []
    seen: set[frozenset[str]] = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) > 2:
            raise EdgeListError(f"expected one or two labels, got {len(tokens)}", number)
        for label in tokens:
            vertices.setdefault(label, None)
        if len(tokens) == 1:
            continue
        u, v = tokens
        if u == v:
            raise EdgeListError(f"loop at {u}", number)
        key = frozenset(tokens)
        if key in seen:
            raise EdgeListError(f"duplicate edge {u} {v}", number)
        seen.add(key)
        edges.append((u, v))
    if not vertices:
        raise EdgeListError("no vertices")
    return make_graph(vertices, edges)


def read_graph(path: str | pathlib.Path) -> Graph:
    """Read an edge-list file, or standard input for ``-``."""
    if str(path) == STDIN:
        text = sys.stdin.read()
    else:
        text = pathlib.Path(path).read_text()
    g = parse_edge_list(text)
    logger.debug(f"read graph with {len(g.vertices)} vertices and {len(g.edges)} edges from {path}")
    return g


def format_graph(g: Graph) -> str:
    """Edges in vertex order, then one line per isolated vertex."""
    lines = [f"{u} {v}" for u, v in g.edge_list()]
    lines.extend(isolated_vertices(g))
    return "\n".join(lines) + "\n"


def format_semidigraph(d: SemiDigraph) -> str:
    """1-based indices; ``i > j`` for a directed edge and ``i j`` for an undirected one."""
    lines = [f"{i + 1} > {j + 1}" for i, j in sorted(d.directed)]
    lines.extend(f"{i + 1} {j + 1}" for i, j in sorted(d.undirected))
    touched = {i for edge in d.directed | d.undirected for i in edge}
    lines.extend(str(i + 1) for i in range(d.n) if i not in touched)
    return "\n".join(lines) + "\n"
