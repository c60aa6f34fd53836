"""Discrete inner products, conserved quantities, and error metrics.

All quantities use the normalized grid inner product

    <u, v>_N = (1/(n_x n_y n_z)) * sum_p u(p) * conj(v(p)),

with derivatives taken spectrally, so the quadratic invariants below are
conserved by the propagator exactly up to roundoff:

- energies ``e1``/``e2``: field and time-derivative energy;
- ``e3``/``e4``: energy of the axis-k derivatives (per axis k);
- ``e5``/``e6``: mixed <u, D_k u> forms (identically zero for real fields,
  reported for completeness);
- helicities ``h1``/``h2``: <F, curl F> forms;
- momenta ``m1``/``m2``: <H, D_k E> and <E, D_k H> per axis;
- divergence fields of ``eps*E`` and ``mu*H`` with their max norms.

Grid reductions rely on numpy's pairwise summation, which keeps them
deterministic for a fixed build.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticCase
from .grid import GridSpec
from .propagator import (
    PHYSICAL,
    FieldState,
    broadcast_wavenumbers,
    to_physical,
    to_spectral,
)
from .spectral import PhysicalField, SpectralField, dft3_inverse

__all__ = [
    "InvariantReport",
    "ErrorReport",
    "DriftValue",
    "InvariantDrifts",
    "NEAR_ZERO_ABS",
    "inner_product_N",
    "spectral_time_derivative",
    "energies",
    "helicities",
    "momenta",
    "divergences",
    "invariant_report",
    "error_norms",
    "relative_change",
]

# Invariants whose baseline magnitude falls below this are reported as
# absolute drifts: the relative error of a roundoff-scale quantity is noise.
NEAR_ZERO_ABS = 1e-12

_AXES = (0, 1, 2)


def inner_product_N(u: PhysicalField, v: PhysicalField) -> float | complex:
    """Normalized grid inner product; conjugates the second argument."""
    if u.grid != v.grid:
        raise ValueError("inner product requires fields on the same grid")
    value = np.sum(u.data * np.conj(v.data)) / u.grid.n_total
    if np.iscomplexobj(u.data) or np.iscomplexobj(v.data):
        return complex(value)
    return float(value.real) if np.iscomplexobj(value) else float(value)


def _norm_sq(values: np.ndarray, grid: GridSpec) -> float:
    return float(np.sum(np.abs(values) ** 2)) / grid.n_total


def _spectral_arrays(state: FieldState) -> tuple[np.ndarray, ...]:
    return to_spectral(state).component_arrays()


def _realized(grid: GridSpec, spectral_data: np.ndarray) -> np.ndarray:
    # Derived fields here (derivatives, divergences) come from real states,
    # so their spectra are conjugate-symmetric by construction and the
    # imaginary part after inversion is pure roundoff; fields that are
    # legitimately zero (e.g. the divergence of a divergence-free solution)
    # must not trip the residue flag.
    return np.ascontiguousarray(dft3_inverse(SpectralField(grid, spectral_data)).data.real)


def spectral_time_derivative(state: FieldState) -> FieldState:
    """Time derivatives of all six components via the spectral curls.

    Computes ``dH/dt = -(1/mu) curl E`` and ``dE/dt = (1/eps) curl H`` with
    exact spectral derivatives and returns a state in the representation of
    the input.  The returned ``time`` matches the input state.
    """
    grid = state.grid
    mu, eps = state.medium.mu, state.medium.eps
    bx, by, bz = broadcast_wavenumbers(grid)
    ex, ey, ez, hx, hy, hz = _spectral_arrays(state)

    dhx = -(1j / mu) * (-bz * ey + by * ez)
    dhy = -(1j / mu) * (bz * ex - bx * ez)
    dhz = -(1j / mu) * (-by * ex + bx * ey)
    dex = (1j / eps) * (-bz * hy + by * hz)
    dey = (1j / eps) * (bz * hx - bx * hz)
    dez = (1j / eps) * (-by * hx + bx * hy)

    deriv = FieldState(
        grid=grid,
        medium=state.medium,
        e=tuple(SpectralField(grid, d) for d in (dex, dey, dez)),
        h=tuple(SpectralField(grid, d) for d in (dhx, dhy, dhz)),
        time=state.time,
    )
    if state.representation == PHYSICAL:
        return to_physical(deriv)
    return deriv


def _axis_derivatives(state: FieldState) -> list[list[np.ndarray]]:
    """Realized D_k of every component: result[k][c] for axes k, components c."""
    grid = state.grid
    b = broadcast_wavenumbers(grid)
    comps = _spectral_arrays(state)
    return [[_realized(grid, 1j * b[k] * c) for c in comps] for k in _AXES]


def _curl_from_derivatives(d: list[list[np.ndarray]], offset: int) -> list[np.ndarray]:
    """Physical curl of the component triple starting at ``offset`` (0 for E, 3 for H)."""
    fx, fy, fz = offset, offset + 1, offset + 2
    return [
        d[1][fz] - d[2][fy],
        d[2][fx] - d[0][fz],
        d[0][fy] - d[1][fx],
    ]


@dataclass(frozen=True)
class InvariantReport:
    """All conserved quantities of one state; axis-indexed ones are 3-tuples."""

    time: float
    e1: float
    e2: float
    e3: tuple[float, float, float]
    e4: tuple[float, float, float]
    e5: tuple[float, float, float]
    e6: tuple[float, float, float]
    h1: float
    h2: float
    m1: tuple[float, float, float]
    m2: tuple[float, float, float]
    div_e_norm: float
    div_h_norm: float


@dataclass(frozen=True)
class ErrorReport:
    """Solution error of a state against its analytic case."""

    l2: float
    linf: float
    component_linf: tuple[float, float, float, float, float, float]
    cpu_seconds: float = 0.0


@dataclass(frozen=True)
class DriftValue:
    """Drift of one invariant; ``absolute`` marks a near-zero baseline."""

    value: float
    absolute: bool = False


@dataclass(frozen=True)
class InvariantDrifts:
    e1: DriftValue
    e2: DriftValue
    e3: tuple[DriftValue, DriftValue, DriftValue]
    e4: tuple[DriftValue, DriftValue, DriftValue]
    e5: tuple[DriftValue, DriftValue, DriftValue]
    e6: tuple[DriftValue, DriftValue, DriftValue]
    h1: DriftValue
    h2: DriftValue
    m1: tuple[DriftValue, DriftValue, DriftValue]
    m2: tuple[DriftValue, DriftValue, DriftValue]


def _physical_arrays(state: FieldState) -> tuple[np.ndarray, ...]:
    return to_physical(state).component_arrays()


def energies(
    state: FieldState, deriv: FieldState | None = None
) -> tuple[float, float, tuple, tuple, tuple, tuple]:
    """(e1, e2, e3, e4, e5, e6); axis-indexed entries are per-axis 3-tuples."""
    grid = state.grid
    mu, eps = state.medium.mu, state.medium.eps
    if deriv is None:
        deriv = spectral_time_derivative(state)
    comps = _physical_arrays(state)
    dcomps = _physical_arrays(deriv)

    def quad(values: tuple[np.ndarray, ...]) -> float:
        e_part = sum(_norm_sq(v, grid) for v in values[:3])
        h_part = sum(_norm_sq(v, grid) for v in values[3:])
        return 0.5 * mu * h_part + 0.5 * eps * e_part

    e1 = quad(comps)
    e2 = quad(dcomps)

    d_state = _axis_derivatives(state)
    d_deriv = _axis_derivatives(deriv)
    e3 = tuple(quad(tuple(d_state[k])) for k in _AXES)
    e4 = tuple(quad(tuple(d_deriv[k])) for k in _AXES)

    def mixed(values: tuple[np.ndarray, ...], dk: list[np.ndarray]) -> float:
        e_part = sum(
            float(np.sum(values[c] * dk[c])) / grid.n_total for c in range(3)
        )
        h_part = sum(
            float(np.sum(values[c] * dk[c])) / grid.n_total for c in range(3, 6)
        )
        return 0.5 * mu * h_part + 0.5 * eps * e_part

    e5 = tuple(mixed(comps, d_state[k]) for k in _AXES)
    e6 = tuple(mixed(dcomps, d_deriv[k]) for k in _AXES)
    return e1, e2, e3, e4, e5, e6


def helicities(state: FieldState, deriv: FieldState | None = None) -> tuple[float, float]:
    """(h1, h2): field and time-derivative helicity."""
    grid = state.grid
    mu, eps = state.medium.mu, state.medium.eps
    if deriv is None:
        deriv = spectral_time_derivative(state)

    def helicity(s: FieldState) -> float:
        comps = _physical_arrays(s)
        d = _axis_derivatives(s)
        curl_e = _curl_from_derivatives(d, 0)
        curl_h = _curl_from_derivatives(d, 3)
        e_term = sum(
            float(np.sum(comps[c] * curl_e[c])) / grid.n_total for c in range(3)
        )
        h_term = sum(
            float(np.sum(comps[3 + c] * curl_h[c])) / grid.n_total for c in range(3)
        )
        return h_term / (2.0 * eps) + e_term / (2.0 * mu)

    return helicity(state), helicity(deriv)


def momenta(state: FieldState) -> tuple[tuple, tuple]:
    """(m1, m2) per axis: <H, D_k E> and <E, D_k H>."""
    grid = state.grid
    comps = _physical_arrays(state)
    d = _axis_derivatives(state)
    m1 = tuple(
        sum(float(np.sum(comps[3 + c] * d[k][c])) / grid.n_total for c in range(3))
        for k in _AXES
    )
    m2 = tuple(
        sum(float(np.sum(comps[c] * d[k][3 + c])) / grid.n_total for c in range(3))
        for k in _AXES
    )
    return m1, m2


def divergences(
    state: FieldState,
) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Divergence fields of ``eps*E`` and ``mu*H`` plus their max norms."""
    grid = state.grid
    mu, eps = state.medium.mu, state.medium.eps
    bx, by, bz = broadcast_wavenumbers(grid)
    ex, ey, ez, hx, hy, hz = _spectral_arrays(state)
    div_e = _realized(grid, 1j * eps * (bx * ex + by * ey + bz * ez))
    div_h = _realized(grid, 1j * mu * (bx * hx + by * hy + bz * hz))
    return (
        div_e,
        div_h,
        float(np.max(np.abs(div_e))),
        float(np.max(np.abs(div_h))),
    )


def invariant_report(state: FieldState) -> InvariantReport:
    """Compute every invariant of a state in one pass."""
    deriv = spectral_time_derivative(state)
    e1, e2, e3, e4, e5, e6 = energies(state, deriv)
    h1, h2 = helicities(state, deriv)
    m1, m2 = momenta(state)
    _, _, div_e_norm, div_h_norm = divergences(state)
    return InvariantReport(
        time=state.time,
        e1=e1,
        e2=e2,
        e3=e3,
        e4=e4,
        e5=e5,
        e6=e6,
        h1=h1,
        h2=h2,
        m1=m1,
        m2=m2,
        div_e_norm=div_e_norm,
        div_h_norm=div_h_norm,
    )


def error_norms(
    state: FieldState, case: AnalyticCase, cpu_seconds: float = 0.0
) -> ErrorReport:
    """L2 and max-norm errors of a physical state against the exact solution."""
    if state.representation != PHYSICAL:
        raise ValueError("error_norms expects a state in physical representation")
    grid = state.grid
    z, y, x = np.meshgrid(grid.points_z, grid.points_y, grid.points_x, indexing="ij")
    exact = [c.ravel() for c in case.evaluate(x, y, z, state.time)]
    comps = state.component_arrays()
    diffs = [comps[c] - exact[c] for c in range(6)]
    l2 = float(np.sqrt(sum(_norm_sq(d, grid) for d in diffs)))
    component_linf = tuple(float(np.max(np.abs(d))) for d in diffs)
    return ErrorReport(
        l2=l2,
        linf=max(component_linf),
        component_linf=component_linf,
        cpu_seconds=cpu_seconds,
    )


def _drift(before: float, after: float, near_zero: float) -> DriftValue:
    delta = abs(after - before)
    if abs(before) < near_zero:
        return DriftValue(delta, absolute=True)
    return DriftValue(delta / abs(before), absolute=False)


def relative_change(
    before: InvariantReport,
    after: InvariantReport,
    near_zero: float = NEAR_ZERO_ABS,
) -> InvariantDrifts:
    """Per-invariant drift |after - before| / |before|.

    Invariants whose baseline is below ``near_zero`` in magnitude are
    reported as absolute drifts and flagged, since dividing one roundoff
    residual by another carries no information.
    """

    def scalar(name: str) -> DriftValue:
        return _drift(getattr(before, name), getattr(after, name), near_zero)

    def triple(name: str) -> tuple[DriftValue, DriftValue, DriftValue]:
        b, a = getattr(before, name), getattr(after, name)
        return tuple(_drift(b[k], a[k], near_zero) for k in _AXES)

    return InvariantDrifts(
        e1=scalar("e1"),
        e2=scalar("e2"),
        e3=triple("e3"),
        e4=triple("e4"),
        e5=triple("e5"),
        e6=triple("e6"),
        h1=scalar("h1"),
        h2=scalar("h2"),
        m1=triple("m1"),
        m2=triple("m2"),
    )
