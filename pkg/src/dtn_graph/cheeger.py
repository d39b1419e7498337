"""Isoperimetric constants of the tilde graph.

Three constants share one quotient shape ``cut(A) / denominator(A)``:

* ``escobar``: denominator ``m(A & boundary)``, constraint ``m(A & boundary) <= m(boundary)/2``
* ``jammes``:  denominator ``m(A & boundary)``, constraint ``m(A) <= m(closure)/2``
* ``classic``: denominator ``m(A)``,            constraint ``m(A) <= m(closure)/2``

Sets with a zero denominator are not candidates.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import BoundaryProblem, VertexSubset, relative_boundary

KINDS = ("escobar", "jammes", "classic")
ENUMERATION_CAP = 24
_BLOCK_ELEMENTS = 1 << 20


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CheegerResult:
    kind: str
    value: float
    witness: VertexSubset
    exact: bool


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown Cheeger kind {kind!r}; expected one of {KINDS}")


def admissible(bp: BoundaryProblem, A: VertexSubset, kind: str) -> bool:
    _check_kind(kind)
    if kind == "escobar":
        return A.boundary_measure > 0 and A.boundary_measure <= 0.5 * float(bp.m_boundary.sum())
    if kind == "jammes":
        return A.boundary_measure > 0 and A.measure <= 0.5 * float(bp.m.sum())
    return A.measure > 0 and A.measure <= 0.5 * float(bp.m.sum())


def quotient(bp: BoundaryProblem, A, kind: str) -> float:
    """Isoperimetric quotient of a single set (no admissibility check)."""
    _check_kind(kind)
    if not isinstance(A, VertexSubset):
        A = bp.subset(A)
    _, cut = relative_boundary(bp, A)
    den = A.measure if kind == "classic" else A.boundary_measure
    return cut / den if den > 0 else float("inf")


def _result_from_witness(bp, kind, members, exact) -> CheegerResult:
    A = bp.subset(members)
    return CheegerResult(kind, quotient(bp, A, kind), A, exact)


# -- exact enumeration -------------------------------------------------------


def _bit_table(k: int) -> np.ndarray:
    s = np.arange(1 << k, dtype=np.int64)
    return ((s[:, None] >> np.arange(k)) & 1).astype(float)


def _block_tables(bp, idx):
    """Per-subset mass, boundary mass and full-graph cut for subsets of ``idx``."""
    N = len(bp.closure)
    bits = _bit_table(len(idx))
    X = np.zeros((bits.shape[0], N))
    X[:, idx] = bits
    i, j, w = bp.edge_arrays
    is_b = np.zeros(N)
    is_b[bp.n_interior:] = 1.0
    cut = np.abs(X[:, i] - X[:, j]) @ w
    return bits, bits @ bp.m[idx], bits @ (bp.m * is_b)[idx], cut


def cheeger_exact(bp: BoundaryProblem, kind: str, workers: int = 1) -> CheegerResult:
    """Exact constant by enumerating every subset of the closure.

    Subsets are encoded as bit masks over closure order.  The closure is split
    into a low and a high half so every block of subsets is scored with a
    single matrix product.  Ties go to the smallest mask.
    """
    _check_kind(kind)
    N = len(bp.closure)
    if N > ENUMERATION_CAP:
        raise EnumerationTooLarge(
            f"|closure| = {N} exceeds the enumeration cap {ENUMERATION_CAP}; use cheeger_sweep"
        )
    nL = (N + 1) // 2
    lo_idx = list(range(nL))
    hi_idx = list(range(nL, N))
    bitsL, mL, mbL, cutL = _block_tables(bp, lo_idx)
    bitsH, mH, mbH, cutH = _block_tables(bp, hi_idx)
    W_LH = bp.weight_matrix[np.ix_(lo_idx, hi_idx)]
    left = bitsL @ W_LH  # (2^nL, nH)

    half_total = 0.5 * float(bp.m.sum())
    half_boundary = 0.5 * float(bp.m_boundary.sum())
    nH_sets = bitsH.shape[0]
    hb = max(1, _BLOCK_ELEMENTS // bitsL.shape[0])
    starts = list(range(0, nH_sets, hb))

    def score(h0):
        h1 = min(h0 + hb, nH_sets)
        cross = left @ bitsH[h0:h1].T
        cut = cutL[:, None] + cutH[None, h0:h1] - 2.0 * cross
        mass = mL[:, None] + mH[None, h0:h1]
        bmass = mbL[:, None] + mbH[None, h0:h1]
        if kind == "escobar":
            ok = (bmass > 0) & (bmass <= half_boundary)
            den = bmass
        elif kind == "jammes":
            ok = (bmass > 0) & (mass <= half_total)
            den = bmass
        else:
            ok = (mass > 0) & (mass <= half_total)
            den = mass
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(ok, cut / np.where(ok, den, 1.0), np.inf)
        flat = q.T.ravel()  # hi-major so argmin picks the smallest mask
        k = int(np.argmin(flat))
        return float(flat[k]), h0 + k // q.shape[0], k % q.shape[0]

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scored = list(pool.map(score, starts))
    else:
        scored = [score(h0) for h0 in starts]

    best = min(scored, key=lambda t: (t[0], t[1], t[2]))
    if not np.isfinite(best[0]):
        raise ValueError(f"no admissible set for kind {kind!r}")
    _, hi, lo = best
    mask = np.concatenate([bitsL[lo], bitsH[hi]]).astype(bool)
    members = [v for v, b in zip(bp.closure, mask) if b]
    return _result_from_witness(bp, kind, members, exact=True)


def cheeger_constants(bp: BoundaryProblem, workers: int = 1) -> dict[str, CheegerResult]:
    return {kind: cheeger_exact(bp, kind, workers) for kind in KINDS}


# -- L1 mean, Sobolev quotient, sweep cut, co-area ----------------------------


def l1_mean(phi, m) -> tuple[tuple[float, float], float]:
    """Weighted-median interval of ``phi`` and its left end as the canonical value."""
    phi = np.asarray(phi, dtype=float)
    m = np.asarray(m, dtype=float)
    if phi.size == 0:
        raise ValueError("L1 mean of an empty function")
    half = 0.5 * float(m.sum())
    vals = np.unique(phi)
    below = np.array([m[phi <= v].sum() for v in vals])
    above = np.array([m[phi >= v].sum() for v in vals])
    lo = float(vals[np.argmax(below >= half)])
    hi = float(vals[len(vals) - 1 - np.argmax((above >= half)[::-1])])
    return (lo, hi), lo


def _total_variation(bp: BoundaryProblem, f: np.ndarray) -> float:
    i, j, w = bp.edge_arrays
    return float(np.sum(w * np.abs(f[i] - f[j])))


def sobolev_quotient(bp: BoundaryProblem, f) -> float:
    """Total variation over the boundary's L1 deviation from its weighted median."""
    f = bp.as_closure_array(f)
    fb = f[bp.n_interior:]
    _, center = l1_mean(fb, bp.m_boundary)
    den = float(np.sum(bp.m_boundary * np.abs(fb - center)))
    if den == 0:
        raise ValueError("degenerate denominator: f is constant on the boundary")
    return _total_variation(bp, f) / den


def cheeger_sweep(bp: BoundaryProblem, f, kind: str) -> CheegerResult:
    """Best admissible level set ``{f >= t}`` or ``{f < t}`` (an upper bound on the constant)."""
    _check_kind(kind)
    f = bp.as_closure_array(f)
    vals = np.unique(f)
    if len(vals) < 2:
        raise ValueError("sweep needs a non-constant function")
    upper = f[None, :] >= vals[1:, None]
    X = np.vstack([upper, ~upper]).astype(float)

    i, j, w = bp.edge_arrays
    cut = np.abs(X[:, i] - X[:, j]) @ w
    mass = X @ bp.m
    bmass = X[:, bp.n_interior:] @ bp.m_boundary
    if kind == "escobar":
        ok = (bmass > 0) & (bmass <= 0.5 * bp.m_boundary.sum())
        den = bmass
    elif kind == "jammes":
        ok = (bmass > 0) & (mass <= 0.5 * bp.m.sum())
        den = bmass
    else:
        ok = (mass > 0) & (mass <= 0.5 * bp.m.sum())
        den = mass
    if not ok.any():
        raise ValueError(f"no admissible threshold set for kind {kind!r}")
    q = np.where(ok, cut / np.where(ok, den, 1.0), np.inf)
    k = int(np.argmin(q))
    members = [v for v, b in zip(bp.closure, X[k]) if b]
    return _result_from_witness(bp, kind, members, exact=False)


def coarea_sides(bp: BoundaryProblem, f) -> tuple[float, float]:
    """Both sides of the discrete co-area identity.

    Left: total variation of ``f`` over tilde-graph edges.  Right: the
    integral over ``t`` of the cut weight of ``{f >= t}``, evaluated exactly
    as a sum over the gaps between consecutive distinct values.
    """
    f = bp.as_closure_array(f)
    vals = np.unique(f)
    i, j, w = bp.edge_arrays
    rhs = 0.0
    for a, b in zip(vals[:-1], vals[1:]):
        level = f >= b
        rhs += (b - a) * float(np.sum(w[level[i] != level[j]]))
    return _total_variation(bp, f), rhs


def coarea_check(bp: BoundaryProblem, f) -> float:
    lhs, rhs = coarea_sides(bp, f)
    return abs(lhs - rhs)
