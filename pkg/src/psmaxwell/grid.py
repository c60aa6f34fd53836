"""Cuboid grid construction for the periodic pseudospectral discretization.

This module is the single authority for index conventions: fields live on a
uniform tensor grid over ``[x_lo, x_hi] x [y_lo, y_hi] x [z_lo, z_hi]`` and
are stored as flat vectors in x-fastest order, ``flat = nx*ny*l + nx*k + j``.
Everything else in the package (transforms, propagator, diagnostics) inherits
these conventions rather than redefining them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DomainSpec",
    "GridSpec",
    "build_grid",
    "flatten_index",
    "unflatten_index",
]

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class DomainSpec:
    """Axis-aligned cuboid domain with periodic boundaries.

    Each upper bound must be strictly greater than the matching lower bound.
    """

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    z_lo: float
    z_hi: float

    def __post_init__(self) -> None:
        for lo, hi, name in (
            (self.x_lo, self.x_hi, "x"),
            (self.y_lo, self.y_hi, "y"),
            (self.z_lo, self.z_hi, "z"),
        ):
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise ValueError(f"domain bounds along {name} must be finite")
            if not hi > lo:
                raise ValueError(
                    f"degenerate domain along {name}: need hi > lo, got [{lo}, {hi}]"
                )

    @classmethod
    def cube(cls, lo: float, hi: float) -> "DomainSpec":
        """Cubic domain ``[lo, hi]^3``."""
        return cls(lo, hi, lo, hi, lo, hi)

    def extent(self, axis: int) -> float:
        """Side length along ``axis`` (0=x, 1=y, 2=z)."""
        lo, hi = self.bounds(axis)
        return hi - lo

    def bounds(self, axis: int) -> tuple[float, float]:
        return (
            (self.x_lo, self.x_hi),
            (self.y_lo, self.y_hi),
            (self.z_lo, self.z_hi),
        )[axis]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Fully materialized discretization of a :class:`DomainSpec`.

    Attributes
    ----------
    domain : DomainSpec
    n_x, n_y, n_z : int
        Positive even point counts per axis.
    h_x, h_y, h_z : float
        Step sizes, ``(hi - lo) / n``.
    nu_x, nu_y, nu_z : float
        Base angular frequencies ``2*pi / (hi - lo)``.
    points_x, points_y, points_z : ndarray
        Collocation coordinates ``lo + j*h`` for ``j = 0 .. n-1``.
    kvec_x, kvec_y, kvec_z : ndarray
        Per-axis angular wavenumbers in FFT order with the Nyquist entry
        (index ``n/2``) forced to exactly 0.0 so discrete differentiation
        stays skew-symmetric.
    """

    domain: DomainSpec
    n_x: int
    n_y: int
    n_z: int
    h_x: float = field(init=False)
    h_y: float = field(init=False)
    h_z: float = field(init=False)
    nu_x: float = field(init=False)
    nu_y: float = field(init=False)
    nu_z: float = field(init=False)
    points_x: np.ndarray = field(init=False, repr=False)
    points_y: np.ndarray = field(init=False, repr=False)
    points_z: np.ndarray = field(init=False, repr=False)
    kvec_x: np.ndarray = field(init=False, repr=False)
    kvec_y: np.ndarray = field(init=False, repr=False)
    kvec_z: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        for n, name in ((self.n_x, "n_x"), (self.n_y, "n_y"), (self.n_z, "n_z")):
            if not isinstance(n, (int, np.integer)):
                raise ValueError(f"{name} must be an integer, got {n!r}")
            if n < 2 or n % 2 != 0:
                raise ValueError(f"{name} must be an even integer >= 2, got {n}")
        for axis, (n_name, h_name, nu_name, p_name, k_name) in enumerate(
            (
                ("n_x", "h_x", "nu_x", "points_x", "kvec_x"),
                ("n_y", "h_y", "nu_y", "points_y", "kvec_y"),
                ("n_z", "h_z", "nu_z", "points_z", "kvec_z"),
            )
        ):
            n = getattr(self, n_name)
            lo, hi = self.domain.bounds(axis)
            h = (hi - lo) / n
            nu = 2.0 * np.pi / (hi - lo)
            points = lo + h * np.arange(n, dtype=np.float64)
            # Integer ladder 0, 1, ..., n/2-1, 0, -n/2+1, ..., -1 scaled by nu.
            ladder = np.fft.fftfreq(n, d=1.0 / n)
            ladder[n // 2] = 0.0
            object.__setattr__(self, h_name, h)
            object.__setattr__(self, nu_name, nu)
            object.__setattr__(self, p_name, _readonly(points))
            object.__setattr__(self, k_name, _readonly(nu * ladder))

    def __eq__(self, other: object) -> bool:
        # Arrays are derived from (domain, counts); compare just those.
        if not isinstance(other, GridSpec):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.counts() == other.counts()
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.counts()))

    @property
    def shape(self) -> tuple[int, int, int]:
        """Array shape ``(n_z, n_y, n_x)`` matching x-fastest flat storage."""
        return (self.n_z, self.n_y, self.n_x)

    @property
    def n_total(self) -> int:
        return self.n_x * self.n_y * self.n_z

    def counts(self) -> tuple[int, int, int]:
        return (self.n_x, self.n_y, self.n_z)

    def kvec(self, axis: int) -> np.ndarray:
        return (self.kvec_x, self.kvec_y, self.kvec_z)[axis]


def build_grid(domain: DomainSpec, n_x: int, n_y: int, n_z: int) -> GridSpec:
    """Construct the grid for ``domain`` with even point counts per axis."""
    return GridSpec(domain=domain, n_x=n_x, n_y=n_y, n_z=n_z)


def flatten_index(j: int, k: int, l: int, grid: GridSpec) -> int:
    """Flat position of zero-based axis indices ``(j, k, l)``, x fastest."""
    if not (0 <= j < grid.n_x and 0 <= k < grid.n_y and 0 <= l < grid.n_z):
        raise IndexError(
            f"index ({j}, {k}, {l}) out of range for grid {grid.counts()}"
        )
    return grid.n_x * grid.n_y * l + grid.n_x * k + j


def unflatten_index(flat: int, grid: GridSpec) -> tuple[int, int, int]:
    """Inverse of :func:`flatten_index`."""
    if not 0 <= flat < grid.n_total:
        raise IndexError(f"flat index {flat} out of range for grid {grid.counts()}")
    l, rem = divmod(flat, grid.n_x * grid.n_y)
    k, j = divmod(rem, grid.n_x)
    return j, k, l
