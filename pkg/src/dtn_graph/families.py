"""Deterministic graph families used as fixtures and in the experiment scripts."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .graph import BoundaryProblem, GraphError, WeightedGraph, build_boundary_problem

FAMILIES = ("path", "hub_fan", "star", "grid", "random")


def path_problem(n: int) -> BoundaryProblem:
    """Unit path ``v1 .. vn`` with the two end vertices as boundary."""
    if n < 6 or n % 2:
        raise ValueError(f"path family needs an even n >= 6, got {n}")
    vs = [f"v{i}" for i in range(1, n + 1)]
    g = WeightedGraph(vs, [(a, b, 1.0) for a, b in zip(vs, vs[1:])])
    return build_boundary_problem(g, vs[1:-1])


def hub_fan_problem(n: int, validate: bool = True) -> BoundaryProblem:
    """Two adjacent hubs ``w1 ~ w2``, each fanning out to ``2n`` boundary leaves.

    ``w1`` carries ``v1 .. v2n`` and ``w2`` carries ``v(2n+1) .. v4n``; all
    weights are 1.  With ``validate`` the known values ``lambda_1 = 1/(n+1)``
    and ``h_E = 1/(2n)`` are checked on construction.
    """
    if n < 1:
        raise ValueError(f"hub-fan family needs n >= 1, got {n}")
    edges = [("w1", "w2", 1.0)]
    edges += [("w1", f"v{i}", 1.0) for i in range(1, 2 * n + 1)]
    edges += [("w2", f"v{i}", 1.0) for i in range(2 * n + 1, 4 * n + 1)]
    bp = build_boundary_problem(WeightedGraph(edges=edges), ["w1", "w2"])
    if validate:
        _validate_hub_fan(bp, n)
    return bp


def hub_fan_witness(n: int) -> list[str]:
    return ["w1"] + [f"v{i}" for i in range(1, 2 * n + 1)]


def _validate_hub_fan(bp: BoundaryProblem, n: int) -> None:
    from .cheeger import ENUMERATION_CAP, cheeger_exact, quotient
    from .dtn import assemble_dtn, spectrum

    lam1 = spectrum(assemble_dtn(bp)).lambda1
    if abs(lam1 - 1.0 / (n + 1)) > 1e-9:
        raise GraphError(f"figure reconstruction invalid: lambda_1 = {lam1}, expected 1/{n + 1}")
    if len(bp.closure) <= ENUMERATION_CAP:
        h_E = cheeger_exact(bp, "escobar").value
    else:
        h_E = quotient(bp, hub_fan_witness(n), "escobar")
    if abs(h_E - 1.0 / (2 * n)) > 1e-12:
        raise GraphError(f"figure reconstruction invalid: h_E = {h_E}, expected 1/{2 * n}")


def star_problem(n: int) -> BoundaryProblem:
    """Center ``c`` as the only interior vertex, ``n`` unit leaves as boundary."""
    if n < 2:
        raise ValueError(f"star family needs n >= 2, got {n}")
    g = WeightedGraph(edges=[("c", f"l{i}", 1.0) for i in range(1, n + 1)])
    return build_boundary_problem(g, ["c"])


def grid_problem(rows: int, cols: int) -> BoundaryProblem:
    """Unit grid with the non-border vertices as interior; corners fall outside the closure."""
    if rows < 3 or cols < 3:
        raise ValueError("grid family needs rows, cols >= 3")
    name = lambda r, c: f"g{r}_{c}"  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((name(r, c), name(r, c + 1), 1.0))
            if r + 1 < rows:
                edges.append((name(r, c), name(r + 1, c), 1.0))
    interior = [name(r, c) for r in range(1, rows - 1) for c in range(1, cols - 1)]
    return build_boundary_problem(WeightedGraph(edges=edges), interior)


def random_problem(n_interior: int, n_boundary_target: int, edge_prob: float = 0.5,
                   weight_range: tuple[float, float] = (0.5, 2.0), seed: int = 0,
                   loop_prob: float = 0.1, max_attempts: int = 100) -> BoundaryProblem:
    """Random weighted graph whose tilde graph is connected.

    Uses Python's Mersenne Twister (``random.Random``) and only its
    ``random()`` draws, whose sequence per seed is stable across versions.
    Candidate boundary vertices that end up unattached to the interior stay
    in the graph but outside the closure; edges between boundary candidates
    are generated too and must be ignored downstream.
    """
    if n_interior < 1 or n_boundary_target < 2:
        raise ValueError("need n_interior >= 1 and n_boundary_target >= 2")
    if not 0 < edge_prob <= 1:
        raise ValueError(f"edge_prob must lie in (0, 1], got {edge_prob}")
    lo, hi = weight_range
    if not 0 < lo <= hi:
        raise ValueError(f"invalid weight range {weight_range}")

    rng = random.Random(seed)
    interior = [f"i{k}" for k in range(n_interior)]
    candidates = [f"b{k}" for k in range(n_boundary_target)]
    verts = interior + candidates
    for _ in range(max_attempts):
        g = WeightedGraph(verts)
        for a in range(len(verts)):
            if rng.random() < loop_prob:
                g.add_edge(verts[a], verts[a], lo + (hi - lo) * rng.random())
            for b in range(a + 1, len(verts)):
                if rng.random() < edge_prob:
                    g.add_edge(verts[a], verts[b], lo + (hi - lo) * rng.random())
        try:
            bp = build_boundary_problem(g, interior)
        except GraphError:
            continue
        if bp.is_connected:
            return bp
    raise GraphError(f"no connected random problem after {max_attempts} attempts (seed={seed})")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> BoundaryProblem:
        p = self.params
        if self.family == "path":
            return path_problem(p["n"])
        if self.family == "hub_fan":
            return hub_fan_problem(p["n"])
        if self.family == "star":
            return star_problem(p["n"])
        if self.family == "grid":
            return grid_problem(p["rows"], p["cols"])
        if self.family == "random":
            return random_problem(seed=self.seed, **p)
        raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")


def problem_digest(bp: BoundaryProblem) -> str:
    """SHA-256 of the edge list followed by the interior ids."""
    text = bp.graph.to_edge_list() + "".join(f"{v}\n" for v in bp.interior)
    return hashlib.sha256(text.encode()).hexdigest()
