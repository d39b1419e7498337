"""Laplacian, normal derivative, harmonic extension and Poisson kernels.

Functions on the closure are plain arrays in ``bp.closure`` order (interior
block first); boundary functions are arrays in ``bp.boundary`` order.  Vertex
keyed mappings are accepted wherever an array is.
"""

from __future__ import annotations

import weakref

import numpy as np
import scipy.linalg

from .graph import BoundaryProblem, GraphError

SOLVER_RTOL = 1e-10

_factor_cache: "weakref.WeakKeyDictionary[BoundaryProblem, tuple]" = weakref.WeakKeyDictionary()


class NoUniqueExtension(GraphError):
    pass


def _check_laplacian_complete(bp: BoundaryProblem) -> None:
    closure = bp.index
    for x in bp.interior:
        for y in bp.graph.neighbors(x):
            if y not in closure:
                raise GraphError(f"closure not Laplacian-complete: {x!r} ~ {y!r} outside closure")


def interior_factor(bp: BoundaryProblem):
    """Cholesky factor of the interior block of the combinatorial Laplacian.

    Computed once per problem and shared.  Raises :class:`NoUniqueExtension`
    if some component of the tilde graph has no boundary vertex.
    """
    cached = _factor_cache.get(bp)
    if cached is not None:
        return cached

    _check_laplacian_complete(bp)
    _, labels = bp.components
    nI = bp.n_interior
    with_boundary = set(labels[nI:].tolist())
    orphan = sorted(set(labels[:nI].tolist()) - with_boundary)
    if orphan:
        lost = [str(bp.interior[i]) for i in range(nI) if labels[i] in orphan]
        raise NoUniqueExtension(f"no unique extension: component without boundary vertex {lost}")

    W = bp.weight_matrix
    L_II = np.diag(W[:nI].sum(axis=1)) - W[:nI, :nI]
    factor = scipy.linalg.cho_factor(L_II, lower=True)
    _factor_cache[bp] = (factor, W[:nI, nI:].copy())
    return _factor_cache[bp]


def apply_laplacian(bp: BoundaryProblem, f) -> np.ndarray:
    """Normalized Laplacian ``(1/m_x) sum_y w_xy (f(y) - f(x))`` on the interior."""
    _check_laplacian_complete(bp)
    f = bp.as_closure_array(f)
    W = bp.weight_matrix[: bp.n_interior]
    return (W @ f - W.sum(axis=1) * f[: bp.n_interior]) / bp.m_interior


def normal_derivative(bp: BoundaryProblem, f) -> np.ndarray:
    """Outward normal derivative ``(1/m_z) sum_{x in Omega} w_zx (f(z) - f(x))``."""
    f = bp.as_closure_array(f)
    nI = bp.n_interior
    B = bp.weight_matrix[nI:, :nI]
    return (bp.m_boundary * f[nI:] - B @ f[:nI]) / bp.m_boundary


def harmonic_extension(bp: BoundaryProblem, phi) -> np.ndarray:
    """The unique closure function equal to ``phi`` on the boundary and harmonic inside."""
    phi = bp.as_boundary_array(phi)
    factor, W_IB = interior_factor(bp)
    u_I = scipy.linalg.cho_solve(factor, W_IB @ phi)
    return np.concatenate([u_I, phi])


def poisson_kernels(bp: BoundaryProblem) -> np.ndarray:
    """Matrix ``P[z, y]`` = harmonic extension of ``delta_y / m_y`` evaluated at interior ``z``."""
    factor, W_IB = interior_factor(bp)
    return scipy.linalg.cho_solve(factor, W_IB / bp.m_boundary)


def dirichlet_energy(bp: BoundaryProblem, f, g=None) -> float:
    """Bilinear energy ``D(f, g)`` over edges touching the interior; ``D(f)`` if ``g`` omitted."""
    f = bp.as_closure_array(f)
    g = f if g is None else bp.as_closure_array(g)
    i, j, w = bp.edge_arrays
    return float(np.sum(w * (f[i] - f[j]) * (g[i] - g[j])))


def green_residual(bp: BoundaryProblem, f, g) -> float:
    """``<Lap f, g>_Omega + D(f, g) - <df/dn, g>_boundary``, which should vanish."""
    f = bp.as_closure_array(f)
    g = bp.as_closure_array(g)
    nI = bp.n_interior
    lap = float(np.sum(apply_laplacian(bp, f) * g[:nI] * bp.m_interior))
    flux = float(np.sum(normal_derivative(bp, f) * g[nI:] * bp.m_boundary))
    return lap + dirichlet_energy(bp, f, g) - flux


def green_scale(bp: BoundaryProblem, f, g) -> float:
    """Magnitude that the Green residual is compared against."""
    f = bp.as_closure_array(f)
    g = bp.as_closure_array(g)
    return float(1.0 + bp.m.sum() * np.max(np.abs(f)) * np.max(np.abs(g)))
