"""Robin eigenvalue, Cheeger-type eigenvalue bounds and the one-shot verifier."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.linalg

from .cheeger import ENUMERATION_CAP, cheeger_exact, cheeger_sweep
from .dtn import assemble_dtn, spectrum
from .graph import BoundaryProblem, GraphError
from .harmonic import harmonic_extension, interior_factor

SLACK_TOL = 1e-9
DEFAULT_K_GRID = np.logspace(-3, 3, 61)


def robin_eigenvalue(bp: BoundaryProblem, k: float) -> tuple[float, np.ndarray]:
    """First Robin eigenvalue ``mu_1(k)`` and its eigenfunction on the closure.

    Boundary values enter the Rayleigh quotient only through their own edges,
    so each is eliminated exactly via ``u(z) = sum_x w_zx u(x) / ((1+k) m_z)``.
    What is left is a symmetric generalized eigenproblem on the interior.
    The eigenfunction is normalized to unit interior mass and positive sum.
    """
    if not k > 0:
        raise ValueError(f"Robin parameter must be positive, got {k}")
    interior_factor(bp)  # same solvability precondition as harmonic extension
    nI = bp.n_interior
    W = bp.weight_matrix
    B = W[:nI, nI:]
    L_II = np.diag(W[:nI].sum(axis=1)) - W[:nI, :nI]
    elim = 1.0 / ((1.0 + k) * bp.m_boundary)
    S = L_II - (B * elim) @ B.T
    vals, vecs = scipy.linalg.eigh(S, np.diag(bp.m_interior), subset_by_index=[0, 0])
    u_I = vecs[:, 0]
    if u_I.sum() < 0:
        u_I = -u_I
    u_B = elim * (B.T @ u_I)
    return float(vals[0]), np.concatenate([u_I, u_B])


def escobar_bound(h_E: float, mu1: float, k: float, a: float) -> float:
    """Lower bound ``(2 h mu - a (k + mu)) a / (a^2 + 2 mu)`` on the first DtN eigenvalue."""
    if not (a > 0 and k > 0):
        raise ValueError(f"a and k must be positive (a={a}, k={k})")
    if not mu1 > 0:
        raise ValueError(f"mu1 must be positive, got {mu1}")
    return (2.0 * h_E * mu1 - a * (k + mu1)) * a / (a * a + 2.0 * mu1)


def escobar_optimal_a(h_E: float, mu1: float, k: float) -> tuple[float, float]:
    """Maximizing ``a`` for :func:`escobar_bound` and the maximum in closed form."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    if not mu1 > 0:
        raise ValueError(f"mu1 must be positive, got {mu1}")
    s = k + mu1
    root = np.sqrt(s * s + 2.0 * h_E * h_E * mu1)
    a0 = 2.0 * h_E * mu1 / (root + s)
    hh = h_E * h_E * mu1
    value = hh * root / (2.0 * hh + s * s + s * root)
    return float(a0), float(value)


@dataclass(frozen=True)
class EscobarSearch:
    k: float
    a: float
    bound: float
    mu1: float


def escobar_best(bp: BoundaryProblem, k_grid=None, h_E: float | None = None,
                 workers: int = 1) -> EscobarSearch:
    """Best Escobar-type bound over a grid of Robin parameters (optimal ``a`` at each)."""
    k_grid = DEFAULT_K_GRID if k_grid is None else np.asarray(k_grid, dtype=float)
    if k_grid.size == 0 or np.any(k_grid <= 0):
        raise ValueError("k grid must be nonempty and positive")
    if h_E is None:
        h_E = cheeger_exact(bp, "escobar").value

    def one(k):
        mu1, _ = robin_eigenvalue(bp, k)
        a0, val = escobar_optimal_a(h_E, mu1, k)
        return EscobarSearch(float(k), a0, val, mu1)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, k_grid))
    else:
        results = [one(k) for k in k_grid]
    return max(results, key=lambda r: r.bound)  # first maximum on ties


def tilde_laplacian(bp: BoundaryProblem) -> np.ndarray:
    W = bp.weight_matrix
    return np.diag(W.sum(axis=1)) - W


def zeta1(bp: BoundaryProblem, return_vector: bool = False):
    """First nontrivial eigenvalue of the tilde graph's Laplacian with measure ``m``."""
    if not bp.is_connected:
        raise GraphError("zeta1 needs a connected tilde graph")
    vals, vecs = scipy.linalg.eigh(tilde_laplacian(bp), np.diag(bp.m), subset_by_index=[0, 1])
    if return_vector:
        return float(vals[1]), vecs[:, 1]
    return float(vals[1])


@dataclass
class BoundsReport:
    lambda1: float
    h_E: float
    h_J: float
    h_classic: float
    zeta1: float
    mu1_at_best_k: float
    best_k: float
    best_a: float
    escobar_lower: float
    jammes_lower: float
    corollary_lower: float
    upper_2hE: float
    exact_constants: bool
    residuals: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [name for name, s in self.residuals.items() if s is not None and s < -SLACK_TOL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["failures"] = self.failures
        return d


def _sweep_constants(bp: BoundaryProblem, fiedler: np.ndarray):
    f = harmonic_extension(bp, fiedler)
    _, g = zeta1(bp, return_vector=True)
    return {
        "escobar": cheeger_sweep(bp, f, "escobar"),
        "jammes": cheeger_sweep(bp, f, "jammes"),
        "classic": cheeger_sweep(bp, g, "classic"),
    }


def verify_all(bp: BoundaryProblem, k_grid=None, workers: int = 1) -> BoundsReport:
    """Compute every spectral quantity and bound, with signed slack per inequality.

    Cheeger constants are exact when the closure fits the enumeration cap.
    Otherwise they come from sweep cuts, which only overestimate, so checks
    that need a constant from below are reported as ``None`` (not checked).
    """
    if not bp.is_connected:
        raise GraphError("bounds are stated for a connected tilde graph")
    spec = spectrum(assemble_dtn(bp))
    lam1 = spec.lambda1
    lam_max = float(spec.eigenvalues[-1])
    z1 = zeta1(bp)

    exact = len(bp.closure) <= ENUMERATION_CAP
    if exact:
        consts = {kind: cheeger_exact(bp, kind, workers) for kind in ("escobar", "jammes", "classic")}
    else:
        consts = _sweep_constants(bp, spec.fiedler)
    hE, hJ, h = (consts[k].value for k in ("escobar", "jammes", "classic"))

    best = escobar_best(bp, k_grid, h_E=hE, workers=workers)
    jammes_lower = 0.5 * h * hJ
    corollary_lower = z1 * z1 / 8.0
    upper = 2.0 * hE

    def only_exact(x):
        return x if exact else None

    residuals = {
        "escobar": only_exact(lam1 - best.bound),
        "jammes": only_exact(lam1 - jammes_lower),
        "corollary": lam1 - corollary_lower,
        "upper_2hE": upper - lam1,
        "cheeger_lower": only_exact(z1 - 0.5 * h * h),
        "cheeger_upper": 2.0 * h - z1,
        "h_le_hJ": only_exact(hJ - h),
        "hJ_le_hE": only_exact(hE - hJ),
        "hJ_le_1": only_exact(1.0 - hJ),
        "spectrum_le_1": 1.0 - lam_max,
    }
    return BoundsReport(
        lambda1=lam1, h_E=hE, h_J=hJ, h_classic=h, zeta1=z1,
        mu1_at_best_k=best.mu1, best_k=best.k, best_a=best.a,
        escobar_lower=best.bound, jammes_lower=jammes_lower,
        corollary_lower=corollary_lower, upper_2hE=upper,
        exact_constants=exact, residuals=residuals,
    )
