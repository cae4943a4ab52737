"""
Graph queries and graph file handling for coxout
"""
import json
import logging
import sys
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

import networkx as nx
import yaml

from coxout.exceptions import InputError, ParseError
from coxout.models.graph import VERTEX_NAME, LabelledGraph, VertexSet
from coxout.utils import is_prime_power

logger = logging.getLogger("coxout")


@lru_cache(maxsize=1024)
def to_networkx(g: LabelledGraph) -> nx.Graph:
    """
    networkx view of a labelled graph, cached per graph value

    The returned graph is shared; callers must not mutate it.
    """
    graph = nx.Graph()
    for v in g.vertices:
        graph.add_node(v, order=g.labels[v])
    graph.add_edges_from(g.edges)
    return graph


def link(g: LabelledGraph, v: str) -> VertexSet:
    """
    Neighbours of v

    Args:
        g: Labelled graph
        v: Vertex of g

    Returns:
        VertexSet: lk(v)
    """
    g.require(v)
    return g.adjacency[v]


def star(g: LabelledGraph, v: str) -> VertexSet:
    """lk(v) together with v"""
    return link(g, v) | {v}


def common_link(g: LabelledGraph, *vertices: str) -> VertexSet:
    """Intersection of the links of the given vertices"""
    result = None
    for v in vertices:
        result = link(g, v) if result is None else result & link(g, v)
    return frozenset() if result is None else result


def _sorted_components(parts: Iterable[Iterable[str]]) -> List[VertexSet]:
    return sorted((frozenset(part) for part in parts), key=min)


def components_avoiding(g: LabelledGraph, removed: Iterable[str]) -> List[VertexSet]:
    """
    Connected components of the full subgraph on the vertices outside removed

    Args:
        g: Labelled graph
        removed: Vertices to delete

    Returns:
        List[VertexSet]: Components ordered by smallest member
    """
    removed = frozenset(removed)
    g.require(*removed)
    keep = [v for v in g.vertices if v not in removed]
    view = to_networkx(g).subgraph(keep)
    return _sorted_components(nx.connected_components(view))


def component_of(g: LabelledGraph, removed: Iterable[str], v: str) -> VertexSet:
    """Component of Γ∖removed containing v"""
    removed = frozenset(removed)
    if v in removed:
        raise InputError(f"{v} is among the removed vertices")
    g.require(v)
    keep = [u for u in g.vertices if u not in removed]
    return frozenset(nx.node_connected_component(to_networkx(g).subgraph(keep), v))


def components(g: LabelledGraph) -> List[VertexSet]:
    """Connected components of g"""
    return components_avoiding(g, ())


def is_connected(g: LabelledGraph) -> bool:
    """True for connected graphs; the empty graph counts as connected"""
    return len(components(g)) <= 1


@lru_cache(maxsize=4096)
def _full_subgraph(g: LabelledGraph, keep: VertexSet) -> LabelledGraph:
    return LabelledGraph.build(
        vertices=[v for v in g.vertices if v in keep],
        edges=[(u, v) for u, v in g.edges if u in keep and v in keep],
        labels={v: g.labels[v] for v in keep},
    )


def full_subgraph(g: LabelledGraph, keep: Iterable[str]) -> LabelledGraph:
    """
    Induced subgraph with labels restricted

    Args:
        g: Labelled graph
        keep: Vertices to keep

    Returns:
        LabelledGraph: Full subgraph on keep
    """
    keep = frozenset(keep)
    g.require(*keep)
    if keep == g.vertex_set:
        return g
    return _full_subgraph(g, keep)


def join(g1: LabelledGraph, g2: LabelledGraph) -> LabelledGraph:
    """
    Disjoint union plus every edge between the two graphs

    Raises:
        InputError: The vertex identifier sets overlap
    """
    clash = g1.vertex_set & g2.vertex_set
    if clash:
        raise InputError(f"join operands share vertices: {sorted(clash)}")
    edges = list(g1.edges) + list(g2.edges)
    edges += [(u, v) for u in g1.vertices for v in g2.vertices]
    labels = dict(g1.labels)
    labels.update(g2.labels)
    return LabelledGraph.build(list(g1.vertices) + list(g2.vertices), edges, labels)


def disjoint_union(*graphs: LabelledGraph) -> LabelledGraph:
    """Disjoint union of graphs with distinct vertex names"""
    vertices, edges, labels = [], [], {}
    for g in graphs:
        if set(g.vertices) & set(vertices):
            raise InputError("union operands share vertices")
        vertices += g.vertices
        edges += g.edges
        labels.update(g.labels)
    return LabelledGraph.build(vertices, edges, labels)


def relabel(g: LabelledGraph, labels: Dict[str, int]) -> LabelledGraph:
    """Copy of g with some orders replaced"""
    merged = dict(g.labels)
    for v, p in labels.items():
        g.require(v)
        merged[v] = p
    return LabelledGraph.build(g.vertices, g.edges, merged)


def discrete_graph(names: Iterable[str], labels: Optional[Dict[str, int]] = None) -> LabelledGraph:
    """Graph without edges"""
    return LabelledGraph.build(list(names), [], labels)


def complete_graph(names: Iterable[str], labels: Optional[Dict[str, int]] = None) -> LabelledGraph:
    """Graph with every edge"""
    names = list(names)
    return LabelledGraph.build(names, list(combinations(names, 2)), labels)


def path_graph(names: Iterable[str], labels: Optional[Dict[str, int]] = None) -> LabelledGraph:
    """Path through names in the given order"""
    names = list(names)
    return LabelledGraph.build(names, list(zip(names, names[1:])), labels)


def cycle_graph(names: Iterable[str], labels: Optional[Dict[str, int]] = None) -> LabelledGraph:
    """Cycle through names in the given order"""
    names = list(names)
    edges = list(zip(names, names[1:]))
    if len(names) > 2:
        edges.append((names[-1], names[0]))
    return LabelledGraph.build(names, edges, labels)


# ---------------------------------------------------------------------------
# Graph files

def parse_graph_text(text: str) -> LabelledGraph:
    """
    Parse the line-based graph format

        vertex <name> [order <p>]
        edge <name> <name>

    `#` starts a comment; blank lines are ignored.

    Raises:
        ParseError: Unknown directive or malformed line, with its line number
    """
    vertices: List[str] = []
    labels: Dict[str, int] = {}
    edges = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]

        if directive == "vertex":
            if len(args) not in (1, 3) or (len(args) == 3 and args[1] != "order"):
                raise ParseError("expected `vertex <name> [order <p>]`", number)
            name = args[0]
            if not VERTEX_NAME.match(name):
                raise ParseError(f"invalid vertex identifier: {name!r}", number)
            if name in labels:
                raise ParseError(f"duplicate vertex: {name}", number)
            order = 2
            if len(args) == 3:
                try:
                    order = int(args[2])
                except ValueError:
                    raise ParseError(f"order must be an integer, got {args[2]!r}", number)
                if not is_prime_power(order):
                    raise ParseError(f"order of {name} must be a prime power >= 2, got {order}", number)
            vertices.append(name)
            labels[name] = order

        elif directive == "edge":
            if len(args) != 2:
                raise ParseError("expected `edge <name> <name>`", number)
            u, v = args
            for w in (u, v):
                if w not in labels:
                    raise ParseError(f"edge uses undeclared vertex {w}", number)
            if u == v:
                raise ParseError(f"loop at {u} is not allowed", number)
            edges.append((u, v))

        else:
            raise ParseError(f"unknown directive: {directive}", number)

    return LabelledGraph.build(vertices, edges, labels)


def graph_from_mapping(data: Dict) -> LabelledGraph:
    """Build a graph from a JSON / YAML mapping with vertices, edges and labels"""
    if not isinstance(data, dict):
        raise ParseError("graph document must be a mapping")
    unknown = set(data) - {"vertices", "edges", "labels"}
    if unknown:
        raise ParseError(f"unknown graph fields: {sorted(unknown)}")
    return LabelledGraph.model_validate(data)


def parse_graph(text: str, fmt: Optional[str] = None) -> LabelledGraph:
    """
    Parse a graph document

    Args:
        text: Document contents
        fmt: "text", "json" or "yaml"; detected from the content when None

    Returns:
        LabelledGraph: Validated graph
    """
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "text"

    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.lineno)
        return graph_from_mapping(data)
    if fmt == "yaml":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise ParseError(f"invalid YAML: {e}", mark.line + 1 if mark else None)
        return graph_from_mapping(data or {})
    if fmt == "text":
        return parse_graph_text(text)
    raise InputError(f"unknown graph format: {fmt}")


def load_graph(source: Union[str, Path]) -> LabelledGraph:
    """
    Load a graph from a path, or from stdin when source is "-"

    The format follows the file suffix (.json, .yaml / .yml), otherwise the
    content decides.
    """
    if str(source) == "-":
        logger.debug("Reading graph from stdin")
        return parse_graph(sys.stdin.read())

    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read graph file {path}: {e.strerror}")

    suffix = path.suffix.lower()
    fmt = {".json": "json", ".yaml": "yaml", ".yml": "yaml"}.get(suffix)
    logger.debug(f"Loading graph from {path} ({fmt or 'auto'})")
    return parse_graph(text, fmt)


def format_graph_text(g: LabelledGraph) -> str:
    """Render g in the line-based graph format"""
    lines = []
    for v in g.vertices:
        p = g.labels[v]
        lines.append(f"vertex {v}" if p == 2 else f"vertex {v} order {p}")
    for u, v in g.edges:
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")
