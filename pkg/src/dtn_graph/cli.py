"""Command-line front end: ``dtn-graph {spectrum,cheeger,bounds,verify,generate}``.

Every command except ``generate`` reads a graph (edge list or JSON) plus an
interior set and writes one JSON report.  Exit codes: 0 success, 1 a checked
inequality failed (``verify`` only), 2 bad input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import SLACK_TOL, verify_all, zeta1
from .cheeger import KINDS, cheeger_exact, cheeger_sweep
from .dtn import ONE_TOL, ZERO_TOL, ConsistencyError, assemble_dtn, q_operator, spectrum
from .families import FAMILIES, FamilySpec
from .graph import BoundaryProblem, GraphError, parse_problem
from .harmonic import harmonic_extension

ENV_PREFIX = "DTN_GRAPH_"


def tolerances(args) -> dict:
    """Defaults, overridden by ``DTN_GRAPH_*_TOL`` env vars, overridden by flags."""
    tol = {"slack": SLACK_TOL, "zero": ZERO_TOL, "one": ONE_TOL}
    for key in tol:
        env = os.environ.get(f"{ENV_PREFIX}{key.upper()}_TOL")
        if env is not None:
            try:
                tol[key] = float(env)
            except ValueError:
                raise GraphError(f"{ENV_PREFIX}{key.upper()}_TOL is not a number: {env!r}") from None
        flag = getattr(args, f"{key}_tol", None)
        if flag is not None:
            tol[key] = flag
    return tol


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if np.isfinite(x) else None
    return x


def _load(args) -> tuple[BoundaryProblem, str]:
    graph_bytes = Path(args.graph).read_bytes()
    digest = hashlib.sha256(graph_bytes)
    interior_text = None
    if args.interior is not None:
        interior_bytes = Path(args.interior).read_bytes()
        digest.update(b"\0")
        digest.update(interior_bytes)
        interior_text = interior_bytes.decode("utf-8")
    return parse_problem(graph_bytes.decode("utf-8"), interior_text), digest.hexdigest()


def _spectrum_result(bp, args, tol) -> dict:
    report = spectrum(assemble_dtn(bp))
    vals = report.eigenvalues
    _, _, kdim = q_operator(bp)
    out = {
        "boundary_order": list(bp.boundary),
        "boundary_measure": bp.m_boundary,
        "eigenvalues": vals,
        "lambda1": report.lambda1,
        "multiplicity_zero": int(np.sum(vals <= tol["zero"])),
        "components": bp.n_components,
        "dim_E1": int(np.sum(np.abs(vals - 1.0) <= tol["one"])),
        "dim_ker_Q": kdim,
    }
    if args.eigenvectors:
        out["eigenvectors"] = report.eigenvectors.T
    return out


def _cheeger_result(bp, args, tol) -> dict:
    if args.sweep:
        if args.kind == "classic":
            _, f = zeta1(bp, return_vector=True)
        else:
            f = harmonic_extension(bp, spectrum(assemble_dtn(bp)).fiedler)
        res = cheeger_sweep(bp, f, args.kind)
    else:
        res = cheeger_exact(bp, args.kind, workers=args.workers)
    order = {v: i for i, v in enumerate(bp.graph.vertices)}
    return {
        "kind": res.kind,
        "value": res.value,
        "witness": sorted(res.witness.members, key=order.__getitem__),
        "exact": res.exact,
    }


def _bounds_result(bp, args, tol) -> dict:
    report = verify_all(bp, workers=args.workers)
    d = report.to_dict()
    failures = [k for k, s in report.residuals.items() if s is not None and s < -tol["slack"]]
    d["failures"] = failures
    d["passed"] = not failures
    return d


def _generate(args) -> int:
    params = {}
    if args.family in ("path", "hub_fan", "star"):
        if args.n is None:
            raise GraphError(f"--n is required for family {args.family}")
        params["n"] = args.n
    elif args.family == "grid":
        params = {"rows": args.rows, "cols": args.cols}
    else:
        params = {
            "n_interior": args.n_interior,
            "n_boundary_target": args.n_boundary,
            "edge_prob": args.edge_prob,
            "weight_range": (args.weight_min, args.weight_max),
        }
    bp = FamilySpec(args.family, params, args.seed).build()
    edges = bp.graph.to_edge_list()
    interior = "".join(f"{v}\n" for v in bp.interior)
    if args.prefix:
        Path(f"{args.prefix}.edges").write_text(edges)
        Path(f"{args.prefix}.interior").write_text(interior)
    else:
        doc = {"edges": [[u, v, w] for u, v, w in bp.graph.edges()], "interior": list(bp.interior)}
        sys.stdout.write(json.dumps(doc) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtn-graph", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="edge list or JSON document")
    common.add_argument("--interior", help="interior vertex ids, one per line")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--slack-tol", type=float)
    common.add_argument("--zero-tol", type=float)
    common.add_argument("--one-tol", type=float)

    p = sub.add_parser("spectrum", parents=[common], help="DtN spectrum")
    p.add_argument("--eigenvectors", action="store_true")

    p = sub.add_parser("cheeger", parents=[common], help="one isoperimetric constant")
    p.add_argument("--kind", choices=KINDS, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--sweep", action="store_true")

    sub.add_parser("bounds", parents=[common], help="all bounds with slacks")
    sub.add_parser("verify", parents=[common], help="like bounds; exit 1 on a violated bound")

    p = sub.add_parser("generate", help="write a fixture graph")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--n-interior", type=int, default=6)
    p.add_argument("--n-boundary", type=int, default=4)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--weight-min", type=float, default=0.5)
    p.add_argument("--weight-max", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prefix", help="write PREFIX.edges and PREFIX.interior")
    return parser


_HANDLERS = {
    "spectrum": _spectrum_result,
    "cheeger": _cheeger_result,
    "bounds": _bounds_result,
    "verify": _bounds_result,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return _generate(args)
        tol = tolerances(args)
        bp, digest = _load(args)
        result = _HANDLERS[args.command](bp, args, tol)
    except ConsistencyError as exc:
        print(f"dtn-graph: internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except (GraphError, ValueError, OSError, UnicodeDecodeError) as exc:
        print(f"dtn-graph: error: {exc}", file=sys.stderr)
        return 2

    report = {
        "tool": "dtn-graph",
        "version": __version__,
        "command": args.command,
        "input_sha256": digest,
        "tolerances": tol,
        **result,
    }
    text = json.dumps(_jsonable(report), indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not result["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())
