"""Slow dense reference implementations, for tests only.

Everything here is written directly from the defining formulas (naive DFT
sums, explicit cotangent differentiation matrices, Kronecker-assembled curl
blocks, Taylor-series matrix exponential) and shares no code with the fast
paths beyond the grid conventions.  Size guards reject anything bigger than
desk-test scale so these O(n^2)-O(n^3) routines cannot leak into production
use or benchmarks.
"""

from __future__ import annotations

import numpy as np

from .grid import GridSpec
from .spectral import PhysicalField, SpectralField

__all__ = [
    "dense_diff_matrix",
    "dense_diff_operator",
    "dense_curl",
    "dense_dft_matrix",
    "dense_expm",
    "naive_dft3",
]

_MAX_DIFF_N = 16
_MAX_CURL_N = 8
_MAX_DFT_N = 8
_MAX_EXPM_DIM = 600


def dense_diff_matrix(grid: GridSpec, axis: int) -> np.ndarray:
    """Dense cotangent differentiation matrix for one axis.

    Entries ``0.5 * nu * (-1)**(j+l) / tan(nu*(w_j - w_l)/2)`` off the
    diagonal, zero diagonal.  Antisymmetric by construction.
    """
    n = grid.counts()[axis]
    if n > _MAX_DIFF_N:
        raise ValueError(f"dense_diff_matrix is test-only; n={n} exceeds {_MAX_DIFF_N}")
    nu = (grid.nu_x, grid.nu_y, grid.nu_z)[axis]
    points = (grid.points_x, grid.points_y, grid.points_z)[axis]
    d = np.zeros((n, n))
    for j in range(n):
        for l in range(n):
            if j == l:
                continue
            d[j, l] = 0.5 * nu * (-1.0) ** (j + l) / np.tan(nu * (points[j] - points[l]) / 2.0)
    return d


def _axis_kron(grid: GridSpec, axis: int) -> np.ndarray:
    """Kronecker placement of the 1D matrix into the flat 3D layout."""
    dx = dense_diff_matrix(grid, axis)
    ix = np.eye(grid.n_x)
    iy = np.eye(grid.n_y)
    iz = np.eye(grid.n_z)
    if axis == 0:
        return np.kron(iz, np.kron(iy, dx))
    if axis == 1:
        return np.kron(iz, np.kron(dx, ix))
    return np.kron(dx, np.kron(iy, ix))


def dense_diff_operator(grid: GridSpec, axis: int) -> np.ndarray:
    """Dense n_total x n_total derivative along ``axis`` on flat fields."""
    if max(grid.counts()) > _MAX_CURL_N:
        raise ValueError("dense_diff_operator is test-only; grid too large")
    return _axis_kron(grid, axis)


def dense_curl(grid: GridSpec) -> np.ndarray:
    """Dense 3*n_total square curl matrix acting on stacked (Fx, Fy, Fz).

    Symmetric as a whole (antisymmetric blocks of antisymmetric matrices).
    """
    if max(grid.counts()) > _MAX_CURL_N:
        raise ValueError("dense_curl is test-only; grid too large")
    d1 = _axis_kron(grid, 0)
    d2 = _axis_kron(grid, 1)
    d3 = _axis_kron(grid, 2)
    z = np.zeros_like(d1)
    return np.block([
        [z, -d3, d2],
        [d3, z, -d1],
        [-d2, d1, z],
    ])


def dense_expm(a: np.ndarray, t: float = 1.0) -> np.ndarray:
    """Matrix exponential of ``t*a`` by scaling-and-squaring Taylor series.

    Terms are accumulated until the next term's norm drops below 1e-18 times
    the partial sum's norm; a hard cap guards against non-convergence.
    """
    a = np.asarray(a)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("dense_expm expects a square matrix")
    if n > _MAX_EXPM_DIM:
        raise ValueError(f"dense_expm is test-only; dim={n} exceeds {_MAX_EXPM_DIM}")
    m = t * a
    norm = np.linalg.norm(m, np.inf)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5)))) if norm > 0.5 else 0
    m = m / (2.0 ** squarings)

    result = np.eye(n, dtype=m.dtype)
    term = np.eye(n, dtype=m.dtype)
    for k in range(1, 200):
        term = term @ m / k
        result = result + term
        if np.linalg.norm(term, np.inf) < 1e-18 * np.linalg.norm(result, np.inf):
            break
    else:
        raise RuntimeError("dense_expm series failed to converge")
    for _ in range(squarings):
        result = result @ result
    return result


def dense_dft_matrix(grid: GridSpec) -> np.ndarray:
    """Full n_total x n_total forward DFT matrix over the flat layout."""
    nx, ny, nz = grid.counts()
    if max(nx, ny, nz) > _MAX_DFT_N:
        raise ValueError("dense_dft_matrix is test-only; grid too large")
    flat = np.arange(grid.n_total)
    jx = flat % nx
    ky = (flat // nx) % ny
    lz = flat // (nx * ny)
    # W[m, p] = exp(-2*pi*i*(mx*jx/nx + my*ky/ny + mz*lz/nz))
    phase = (
        np.outer(jx, jx) / nx + np.outer(ky, ky) / ny + np.outer(lz, lz) / nz
    )
    return np.exp(-2.0j * np.pi * phase)


def naive_dft3(f: PhysicalField) -> SpectralField:
    """Direct O(n_total^2) evaluation of the forward DFT sum."""
    return SpectralField(f.grid, dense_dft_matrix(f.grid) @ f.data)
