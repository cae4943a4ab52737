"""
Labelled graph model for coxout
"""
import re
from typing import Any, Dict, FrozenSet, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from coxout.exceptions import InputError
from coxout.utils import is_prime_power

# Subset of the vertices of a fixed LabelledGraph
VertexSet = FrozenSet[str]

VERTEX_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.'\-]*$")


class LabelledGraph(BaseModel):
    """
    Finite simplicial graph with a prime power p(v) >= 2 on every vertex.

    Vertices are opaque identifiers kept in identifier order, edges are
    unordered pairs stored as sorted tuples. Immutable after construction.
    """
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...] = ()
    edges: Tuple[Tuple[str, str], ...] = ()
    labels: Dict[str, int] = Field(default_factory=dict)

    _adjacency: Dict[str, FrozenSet[str]] = PrivateAttr(default_factory=dict)
    _hash: int = PrivateAttr(default=0)

    @model_validator(mode="before")
    @classmethod
    def _normalise(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data

        vertices = list(data.get("vertices") or ())
        seen = set()
        for v in vertices:
            if not isinstance(v, str) or not VERTEX_NAME.match(v):
                raise InputError(f"invalid vertex identifier: {v!r}")
            if v in seen:
                raise InputError(f"duplicate vertex: {v}")
            seen.add(v)

        edges = set()
        for edge in data.get("edges") or ():
            pair = list(edge)
            if len(pair) != 2:
                raise InputError(f"edge must have two endpoints: {edge!r}")
            u, v = pair
            if u not in seen or v not in seen:
                raise InputError(f"edge {u}-{v} uses an undeclared vertex")
            if u == v:
                raise InputError(f"loop at {u} is not allowed")
            edges.add((u, v) if u < v else (v, u))

        raw_labels = dict(data.get("labels") or {})
        for v in raw_labels:
            if v not in seen:
                raise InputError(f"label for undeclared vertex {v}")
        labels = {}
        for v in vertices:
            p = raw_labels.get(v, 2)
            if not is_prime_power(p):
                raise InputError(f"order of {v} must be a prime power >= 2, got {p!r}")
            labels[v] = p

        return {
            "vertices": tuple(sorted(vertices)),
            "edges": tuple(sorted(edges)),
            "labels": labels,
        }

    def model_post_init(self, __context: Any) -> None:
        adjacency = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        self._adjacency = {v: frozenset(nbrs) for v, nbrs in adjacency.items()}
        self._hash = hash((self.vertices, self.edges, tuple(sorted(self.labels.items()))))

    def __hash__(self) -> int:
        return self._hash

    @property
    def adjacency(self) -> Dict[str, FrozenSet[str]]:
        """Neighbour sets keyed by vertex"""
        return self._adjacency

    @property
    def vertex_set(self) -> VertexSet:
        return frozenset(self.vertices)

    def has_vertex(self, v: str) -> bool:
        return v in self._adjacency

    def require(self, *vertices: str) -> None:
        """Raise InputError for any vertex not in the graph"""
        for v in vertices:
            if v not in self._adjacency:
                raise InputError(f"unknown vertex: {v}")

    def order(self, v: str) -> int:
        """The label p(v)"""
        self.require(v)
        return self.labels[v]

    def is_adjacent(self, u: str, v: str) -> bool:
        return v in self._adjacency.get(u, ())

    def is_coxeter(self) -> bool:
        """True when every vertex is an involution"""
        return all(p == 2 for p in self.labels.values())

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "labels": dict(sorted(self.labels.items())),
        }

    @classmethod
    def build(cls, vertices: List[str], edges: List[Tuple[str, str]] = (),
              labels: Dict[str, int] = None) -> "LabelledGraph":
        """Construct and validate"""
        return cls.model_validate({"vertices": list(vertices), "edges": list(edges),
                                   "labels": labels or {}})
