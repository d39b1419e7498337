"""Weighted graphs, boundary problems and edge-measure primitives.

A :class:`BoundaryProblem` is the central object of the package: a finite
weighted graph together with an interior vertex set ``Omega``.  Everything
else (vertex boundary, closure, measure, the graph ``Omega~`` whose edges
touch the interior) is derived from those two inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

import numpy as np

Vertex = Hashable


class GraphError(ValueError):
    """Malformed input or a graph that violates a structural requirement."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WeightedGraph:
    """Finite undirected graph with symmetric nonnegative weights.

    Self-loops are allowed.  A weight of zero means "no edge".  Vertex order
    is the insertion order and is preserved everywhere downstream.
    """

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[tuple] = ()):
        self._vertices: list[Vertex] = []
        self._index: dict[Vertex, int] = {}
        self._adj: dict[Vertex, dict[Vertex, float]] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v, w in edges:
            self.add_edge(u, v, w)

    def add_vertex(self, v: Vertex) -> None:
        if v not in self._index:
            self._index[v] = len(self._vertices)
            self._vertices.append(v)
            self._adj[v] = {}

    def add_edge(self, u: Vertex, v: Vertex, w: float) -> None:
        w = float(w)
        if not np.isfinite(w):
            raise GraphError(f"non-finite weight on edge ({u!r}, {v!r})")
        if w < 0:
            raise GraphError(f"negative weight {w} on edge ({u!r}, {v!r})")
        self.add_vertex(u)
        self.add_vertex(v)
        if w == 0:
            self._adj[u].pop(v, None)
            self._adj[v].pop(u, None)
            return
        self._adj[u][v] = w
        self._adj[v][u] = w

    @property
    def vertices(self) -> list[Vertex]:
        return list(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self._vertices)

    def weight(self, u: Vertex, v: Vertex) -> float:
        return self._adj.get(u, {}).get(v, 0.0)

    def neighbors(self, v: Vertex) -> dict[Vertex, float]:
        """Neighbors of ``v`` (including ``v`` itself for a self-loop) with weights."""
        return dict(self._adj[v])

    def edges(self) -> list[tuple[Vertex, Vertex, float]]:
        """Each undirected edge once, ordered by first endpoint's index."""
        out = []
        for u in self._vertices:
            iu = self._index[u]
            for v, w in self._adj[u].items():
                if self._index[v] >= iu:
                    out.append((u, v, w))
        return out

    def scaled(self, c: float) -> "WeightedGraph":
        return WeightedGraph(self._vertices, [(u, v, c * w) for u, v, w in self.edges()])

    def relabeled(self, mapping: Mapping[Vertex, Vertex]) -> "WeightedGraph":
        return WeightedGraph(
            [mapping[v] for v in self._vertices],
            [(mapping[u], mapping[v], w) for u, v, w in self.edges()],
        )

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v} {w!r}\n" for u, v, w in self.edges())

    def __repr__(self) -> str:
        return f"WeightedGraph(|V|={len(self)}, |E|={len(self.edges())})"


def parse_graph(text: str) -> WeightedGraph:
    """Parse an edge list (``u v w`` per line, ``#`` comments) or a JSON document.

    JSON input has the form ``{"edges": [[u, v, w], ...], "interior": [...]}``;
    the interior entry is ignored here (see :func:`parse_problem`).
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _graph_from_json(_load_json(text))

    g = WeightedGraph()
    seen: dict[frozenset, tuple[float, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<u> <v> <weight>', got {raw.strip()!r}", lineno)
        u, v, ws = parts
        try:
            w = float(ws)
        except ValueError:
            raise ParseError(f"weight {ws!r} is not a number", lineno) from None
        if w < 0:
            raise ParseError(f"negative weight {w}", lineno)
        _record_edge(g, seen, u, v, w, lineno)
    return g


def _record_edge(g, seen, u, v, w, lineno):
    key = frozenset((u, v))
    if key in seen:
        prev, prev_line = seen[key]
        if prev != w:
            raise ParseError(
                f"edge {{{u}, {v}}} declared with weight {w} but line {prev_line} gave {prev}",
                lineno,
            )
        raise ParseError(f"duplicate edge {{{u}, {v}}} (first on line {prev_line})", lineno)
    seen[key] = (w, lineno)
    try:
        g.add_edge(u, v, w)
    except GraphError as exc:
        raise ParseError(str(exc), lineno) from None


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "edges" not in doc:
        raise ParseError("JSON graph must be an object with an 'edges' array")
    return doc


def _graph_from_json(doc: dict) -> WeightedGraph:
    g = WeightedGraph()
    seen: dict = {}
    for i, entry in enumerate(doc["edges"]):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise ParseError(f"edges[{i}] must be [u, v, w]")
        u, v, w = entry
        if isinstance(w, bool) or not isinstance(w, (int, float)):
            raise ParseError(f"edges[{i}] weight must be a number")
        if w < 0:
            raise ParseError(f"edges[{i}]: negative weight {w}")
        _record_edge(g, seen, str(u), str(v), float(w), None)
    return g


def parse_interior(text: str) -> list[str]:
    """One vertex id per line; blank lines and ``#`` comments ignored."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_problem(graph_text: str, interior_text: str | None = None) -> "BoundaryProblem":
    """Build a problem from an edge list + interior file, or a JSON document."""
    g = parse_graph(graph_text)
    if interior_text is not None:
        interior = parse_interior(interior_text)
    elif graph_text.lstrip().startswith("{"):
        doc = _load_json(graph_text)
        if "interior" not in doc:
            raise ParseError("JSON document has no 'interior' and no interior file was given")
        interior = [str(v) for v in doc["interior"]]
    else:
        raise ParseError("an interior set is required")
    return build_boundary_problem(g, interior)


@dataclass(frozen=True)
class VertexSubset:
    """A subset of the closure with cached total and boundary measure."""

    members: frozenset
    measure: float
    boundary_measure: float

    def __contains__(self, v) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, eq=False)
class BoundaryProblem:
    """A graph with a chosen interior; all other sets are derived.

    Closure vertices are ordered interior first, then boundary, each in the
    graph's vertex order.  ``index`` maps a vertex to its closure position.
    """

    graph: WeightedGraph
    interior: tuple
    boundary: tuple
    measure: dict = field(repr=False)
    cross_edges: tuple = field(repr=False)

    @property
    def closure(self) -> tuple:
        return self.interior + self.boundary

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.closure)}

    @property
    def n_interior(self) -> int:
        return len(self.interior)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary)

    @cached_property
    def m(self) -> np.ndarray:
        """Measure as an array in closure order."""
        return np.array([self.measure[v] for v in self.closure])

    @cached_property
    def m_boundary(self) -> np.ndarray:
        return self.m[self.n_interior:]

    @cached_property
    def m_interior(self) -> np.ndarray:
        return self.m[: self.n_interior]

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Non-loop edges of the tilde graph as index arrays ``(i, j, w)``."""
        rows = [(self.index[u], self.index[v], w) for u, v, w in self.cross_edges if u != v]
        if not rows:
            return np.zeros(0, int), np.zeros(0, int), np.zeros(0)
        i, j, w = zip(*rows)
        return np.array(i), np.array(j), np.array(w, dtype=float)

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Symmetric closure-indexed weights of the tilde graph, loops dropped."""
        n = len(self.closure)
        W = np.zeros((n, n))
        i, j, w = self.edge_arrays
        W[i, j] = w
        W[j, i] = w
        return W

    @cached_property
    def tilde_graph(self) -> WeightedGraph:
        return WeightedGraph(self.closure, self.cross_edges)

    @cached_property
    def components(self) -> tuple[int, np.ndarray]:
        return connected_components(self)

    @property
    def n_components(self) -> int:
        return self.components[0]

    @property
    def is_connected(self) -> bool:
        return self.n_components == 1

    def subset(self, members: Iterable[Vertex]) -> VertexSubset:
        members = frozenset(members)
        missing = members - set(self.closure)
        if missing:
            raise GraphError(f"vertices not in closure: {sorted(map(str, missing))}")
        bset = set(self.boundary)
        return VertexSubset(
            members,
            float(sum(self.measure[v] for v in members)),
            float(sum(self.measure[v] for v in members if v in bset)),
        )

    def subset_from_mask(self, mask) -> VertexSubset:
        mask = np.asarray(mask, dtype=bool)
        return self.subset(v for v, b in zip(self.closure, mask) if b)

    def indicator(self, A) -> np.ndarray:
        members = A.members if isinstance(A, VertexSubset) else set(A)
        return np.array([1.0 if v in members else 0.0 for v in self.closure])

    def as_closure_array(self, f) -> np.ndarray:
        """Accept an array in closure order or a vertex -> value mapping."""
        if isinstance(f, Mapping):
            return np.array([float(f[v]) for v in self.closure])
        f = np.asarray(f, dtype=float)
        if f.shape != (len(self.closure),):
            raise ValueError(f"expected {len(self.closure)} closure values, got shape {f.shape}")
        return f

    def as_boundary_array(self, phi) -> np.ndarray:
        if isinstance(phi, Mapping):
            return np.array([float(phi[v]) for v in self.boundary])
        phi = np.asarray(phi, dtype=float)
        if phi.shape != (self.n_boundary,):
            raise ValueError(f"expected {self.n_boundary} boundary values, got shape {phi.shape}")
        return phi

    def scaled(self, c: float) -> "BoundaryProblem":
        return build_boundary_problem(self.graph.scaled(c), self.interior)


def build_boundary_problem(g: WeightedGraph, interior: Iterable[Vertex]) -> BoundaryProblem:
    interior_set = set(interior)
    if not interior_set:
        raise GraphError("interior set is empty")
    missing = [v for v in interior_set if v not in g]
    if missing:
        raise GraphError(f"interior vertices not in graph: {sorted(map(str, missing))}")

    order = g.vertices
    omega = tuple(v for v in order if v in interior_set)
    boundary_set = {
        y for x in omega for y in g.neighbors(x) if y not in interior_set
    }
    boundary = tuple(v for v in order if v in boundary_set)
    if len(boundary) < 2:
        raise GraphError(f"boundary too small: |δΩ| = {len(boundary)} (need at least 2)")

    measure = {}
    for x in omega:
        measure[x] = float(sum(g.neighbors(x).values()))
    for z in boundary:
        measure[z] = float(sum(w for y, w in g.neighbors(z).items() if y in interior_set))
    isolated = [v for v, mv in measure.items() if mv <= 0]
    if isolated:
        raise GraphError(f"isolated vertex in closure: {sorted(map(str, isolated))}")

    cross = tuple(
        (u, v, w) for u, v, w in g.edges() if u in interior_set or v in interior_set
    )
    return BoundaryProblem(g, omega, boundary, measure, cross)


def relative_boundary(bp: BoundaryProblem, A) -> tuple[list[tuple], float]:
    """Edges of the tilde graph with exactly one endpoint in ``A``, and their weight."""
    members = A.members if isinstance(A, VertexSubset) else frozenset(A)
    edges = [
        (u, v, w) for u, v, w in bp.cross_edges
        if u != v and ((u in members) != (v in members))
    ]
    return edges, float(sum(w for _, _, w in edges))


def connected_components(bp: BoundaryProblem) -> tuple[int, np.ndarray]:
    """Component count and closure-ordered labels of the tilde graph."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components as _cc

    n = len(bp.closure)
    i, j, w = bp.edge_arrays
    adj = csr_matrix((np.ones_like(w), (i, j)), shape=(n, n))
    count, labels = _cc(adj, directed=False)
    return int(count), labels

