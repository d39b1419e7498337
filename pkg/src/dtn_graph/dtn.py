"""Dirichlet-to-Neumann operator: assembly, spectrum, the eigenvalue-1 space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import BoundaryProblem
from .harmonic import dirichlet_energy, harmonic_extension, normal_derivative, poisson_kernels

ASSEMBLY_TOL = 1e-9
SYMMETRY_TOL = 1e-9
ZERO_TOL = 1e-8
ONE_TOL = 1e-8
RANK_RTOL = 1e-10


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True, eq=False)
class DtNOperator:
    problem: BoundaryProblem = field(repr=False)
    boundary_order: tuple
    matrix: np.ndarray
    effective_weights: np.ndarray
    boundary_measure: np.ndarray
    assembly_error: float

    def __call__(self, phi) -> np.ndarray:
        return self.matrix @ self.problem.as_boundary_array(phi)

    def apply_effective(self, phi) -> np.ndarray:
        """Action written as a weighted Laplacian on the boundary with weights ``mu~``."""
        phi = self.problem.as_boundary_array(phi)
        W = self.effective_weights
        return (W.sum(axis=1) * phi - W @ phi) / self.boundary_measure


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    operator: DtNOperator = field(repr=False)
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, orthonormal in the m-weighted inner product
    multiplicity_zero: int

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[1])

    @property
    def fiedler(self) -> np.ndarray:
        return self.eigenvectors[:, 1]


def dtn_by_columns(bp: BoundaryProblem) -> np.ndarray:
    """Lambda column by column: normal derivative of the extension of each basis vector."""
    N = bp.n_boundary
    cols = []
    for k in range(N):
        e = np.zeros(N)
        e[k] = 1.0
        cols.append(normal_derivative(bp, harmonic_extension(bp, e)))
    return np.column_stack(cols)


def assemble_dtn(bp: BoundaryProblem) -> DtNOperator:
    """Assemble ``I - D^-1 A P D`` and cross-check it against :func:`dtn_by_columns`."""
    nI = bp.n_interior
    A = bp.weight_matrix[nI:, :nI]
    P = poisson_kernels(bp)
    m = bp.m_boundary
    mu_tilde = A @ P * m[None, :]
    lam = np.eye(bp.n_boundary) - mu_tilde / m[:, None]

    err = float(np.max(np.abs(lam - dtn_by_columns(bp))))
    if not err <= ASSEMBLY_TOL:
        raise ConsistencyError(f"DtN assemblies disagree by {err:.3e}")
    return DtNOperator(bp, bp.boundary, lam, mu_tilde, m.copy(), err)


def _fix_signs(V: np.ndarray) -> np.ndarray:
    # largest-magnitude entry positive; argmax returns the first index on ties
    idx = np.argmax(np.abs(np.round(V, 12)), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def spectrum(op: DtNOperator) -> SpectrumReport:
    """Eigenpairs of Lambda, self-adjoint in the m-weighted inner product."""
    r = np.sqrt(op.boundary_measure)
    S = r[:, None] * op.matrix / r[None, :]
    asym = float(np.max(np.abs(S - S.T)))
    if asym > SYMMETRY_TOL:
        raise ConsistencyError(f"symmetrized DtN matrix is not symmetric (defect {asym:.3e})")
    vals, W = np.linalg.eigh(0.5 * (S + S.T))
    V = _fix_signs(W / r[:, None])
    nzero = int(np.sum(vals <= ZERO_TOL))
    return SpectrumReport(op, vals, V, nzero)


def inner_boundary(bp: BoundaryProblem) -> tuple:
    """Interior vertices adjacent to the boundary."""
    bset = set(bp.boundary)
    return tuple(x for x in bp.interior if any(y in bset for y in bp.graph.neighbors(x)))


def q_operator(bp: BoundaryProblem) -> tuple[np.ndarray, tuple, int]:
    """Averaging map from boundary values to inner-boundary vertices.

    Returns ``(Q, rows, kernel_dim)`` where ``Q[x, y] = w_xy / m_x``.
    """
    rows = inner_boundary(bp)
    ri = [bp.index[x] for x in rows]
    nI = bp.n_interior
    Q = bp.weight_matrix[np.ix_(ri, range(nI, nI + bp.n_boundary))] / bp.m[ri][:, None]
    sv = np.linalg.svd(Q, compute_uv=False)
    rank = int(np.sum(sv > RANK_RTOL * sv.max())) if sv.size and sv.max() > 0 else 0
    return Q, rows, bp.n_boundary - rank


def eigenspace_one(report: SpectrumReport, tol: float = ONE_TOL) -> np.ndarray:
    """Basis (columns) of the eigenvalue-1 space; its dimension must match ker Q."""
    mask = np.abs(report.eigenvalues - 1.0) <= tol
    basis = report.eigenvectors[:, mask]
    _, _, kdim = q_operator(report.operator.problem)
    if basis.shape[1] != kdim:
        raise ConsistencyError(
            f"dim E_1 = {basis.shape[1]} but dim ker Q = {kdim}"
        )
    return basis


def rayleigh_quotient(bp: BoundaryProblem, phi) -> float:
    phi = bp.as_boundary_array(phi)
    denom = float(np.sum(phi * phi * bp.m_boundary))
    if denom == 0:
        raise ValueError("Rayleigh quotient of the zero function")
    return dirichlet_energy(bp, harmonic_extension(bp, phi)) / denom


def lp_norm(phi: np.ndarray, m: np.ndarray, p: float) -> float:
    if np.isinf(p):
        return float(np.max(np.abs(phi)))
    return float(np.sum(np.abs(phi) ** p * m) ** (1.0 / p))


def pnorm_bound(p: float) -> float:
    """Proved operator-norm ceiling ``2^(1 - 2/p)`` for ``p`` in ``[2, inf]``."""
    return 2.0 if np.isinf(p) else 2.0 ** (1.0 - 2.0 / p)


def pnorm_bound_check(op: DtNOperator, p: float, samples: int = 1000, seed: int = 0) -> float:
    """Largest ``||Lambda phi||_p / ||phi||_p`` seen over random ``phi``.

    Half the samples are Gaussian, half are random sign vectors (the
    extremal shape for the sup norm).
    """
    if not (p >= 2):
        raise ValueError(f"p must lie in [2, inf], got {p}")
    rng = np.random.default_rng(seed)
    N = len(op.boundary_order)
    m = op.boundary_measure
    n_gauss = samples - samples // 2
    X = np.vstack([
        rng.standard_normal((n_gauss, N)),
        rng.choice([-1.0, 1.0], size=(samples // 2, N)),
    ])
    best = 0.0
    for phi in X:
        d = lp_norm(phi, m, p)
        if d > 0:
            best = max(best, lp_norm(op.matrix @ phi, m, p) / d)
    return best
