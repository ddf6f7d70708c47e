"""Retarded/advanced Klein-Gordon solvers, the causal propagator, Cauchy
data, the symplectic pairing, and slab compression.

Conventions.  The operator is P = d_t^2 - d_x^2 + m^2, discretized by the
leapfrog stencil at unit CFL ratio,

    (P_h u)[n,j] = (u[n+1,j] - 2u[n,j] + u[n-1,j]
                    - u[n,j+1] + 2u[n,j] - u[n,j-1]) / h^2 + m^2 u[n,j].

The retarded solution of P_h u = f vanishes before the source and spreads
exactly one cell per step, so supp(retarded f) lies inside the lattice
forward cone of supp f with exact zeros outside.  The causal propagator
E = retarded - advanced solves the homogeneous equation on every interior
row.  The symplectic pairing of two sources evaluated from Cauchy data at
the reference surface equals h^2 * sum((Ef) * g) to rounding and is
therefore surface independent; both facts are exercised in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._core import leapfrog_fill
from .errors import OutOfWindow, WindowTooSmall
from .spacetime import Spacetime2D, SpacetimeKind
from .testfun import TestFunction, from_grid

__all__ = [
    "Solution",
    "CauchyData",
    "retarded",
    "advanced",
    "causal_propagator",
    "cauchy_data",
    "evolve_from_rows",
    "symplectic",
    "pairing",
    "smoothstep_profile",
    "slab_compress",
]


@dataclass(frozen=True)
class Solution:
    """A grid function satisfying the discrete field equation up to its source."""

    ambient: Spacetime2D
    values: np.ndarray

    def __post_init__(self):
        self.values.flags.writeable = False

    def row(self, n_abs: int) -> np.ndarray:
        """Row of values at absolute time index n_abs."""
        return self.values[n_abs - self.ambient.it0]

    def to_csv(self) -> str:
        h = self.ambient.spacing
        lines = ["t," + ",".join(repr(float(x)) for x in self.ambient.positions())]
        for i, row in enumerate(self.values):
            lines.append(repr((self.ambient.it0 + i) * h) + ","
                         + ",".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"ambient": self.ambient.to_json(),
                "values": [[float(v) for v in row] for row in self.values]}


@dataclass(frozen=True)
class CauchyData:
    surface_time: float
    phi: np.ndarray
    pi: np.ndarray

    def to_json(self) -> dict:
        return {"t0": self.surface_time,
                "phi": [float(v) for v in self.phi],
                "pi": [float(v) for v in self.pi]}


def _check_margins(f: TestFunction, forward: bool) -> None:
    """The causal shadow of supp f must stay clear of the window edges.

    One spatial cell is kept clear so the Dirichlet edge columns never
    carry signal; the time margin keeps the first/last rows source free.
    """
    M = f.ambient
    lo, hi = f.support_rows()
    if np.all(f.values == 0.0):
        return
    if lo <= M.it0 or hi >= M.it1:
        raise WindowTooSmall("source touches the first or last grid row")
    if M.kind is SpacetimeKind.CYLINDER:
        return
    cols = f.column_indices()
    nz = np.any(f.values != 0.0, axis=0)
    jmin = int(cols[nz].min()) + M.ix0
    jmax = int(cols[nz].max()) + M.ix0
    reach = (M.it1 - lo) if forward else (hi - M.it0)
    if jmin - reach <= M.ix0 or jmax + reach >= M.ix1:
        raise WindowTooSmall(
            "the causal shadow of the source reaches the spatial window edge; "
            "enlarge the window or shrink the support"
        )


def _solve(f: TestFunction, forward: bool) -> Solution:
    M = f.ambient
    _check_margins(f, forward)
    src = f.on_grid()
    u = np.zeros_like(src)
    leapfrog_fill(u, src, M.spacing, M.mass,
                  periodic=M.kind is SpacetimeKind.CYLINDER, reverse=not forward)
    return Solution(M, u)


def retarded(f: TestFunction) -> Solution:
    """Forward solution of P_h u = f vanishing in the past of supp f."""
    return _solve(f, forward=True)


def advanced(f: TestFunction) -> Solution:
    """Backward solution of P_h u = f vanishing in the future of supp f."""
    return _solve(f, forward=False)


def causal_propagator(f: TestFunction) -> Solution:
    """E f = (retarded - advanced) f; homogeneous on every interior row."""
    M = f.ambient
    return Solution(M, retarded(f).values - advanced(f).values)


def cauchy_data(u: Solution, t0: float = 0.0) -> CauchyData:
    """Field value and centered-difference time derivative at a grid time."""
    M = u.ambient
    n = round(t0 / M.spacing)
    if not (M.it0 + 1 <= n <= M.it1 - 1):
        raise OutOfWindow(f"need both neighbours of t0 = {t0} inside the window")
    k = n - M.it0
    phi = u.values[k].copy()
    pi = (u.values[k + 1] - u.values[k - 1]) / (2.0 * M.spacing)
    return CauchyData(n * M.spacing, phi, pi)


def evolve_from_rows(
    M: Spacetime2D,
    row_lo: np.ndarray,
    row_hi: np.ndarray,
    anchor: int,
    span: tuple[int, int] | None = None,
) -> Solution:
    """Homogeneous evolution from two consecutive rows at absolute times
    (anchor, anchor + 1), over the whole window or a row span.

    Plane grids use Dirichlet edges, so callers must keep the evolved
    cone of the data inside the window; the span argument exists to keep
    that constraint local.
    """
    i0, i1 = span if span is not None else (M.it0, M.it1)
    if not (M.it0 <= i0 <= anchor and anchor + 1 <= i1 <= M.it1):
        raise OutOfWindow("evolution span must contain the anchor rows")
    periodic = M.kind is SpacetimeKind.CYLINDER
    n_rows = i1 - i0 + 1
    u = np.zeros((n_rows, M.n_x))
    a = anchor - i0
    u[a] = row_lo
    u[a + 1] = row_hi
    if a + 2 <= n_rows - 1:
        leapfrog_fill(u[a:], None, M.spacing, M.mass, periodic, reverse=False)
    if a >= 1:
        leapfrog_fill(u[: a + 2], None, M.spacing, M.mass, periodic, reverse=True)
    if span is None:
        return Solution(M, u)
    full = np.zeros((M.n_t, M.n_x))
    full[i0 - M.it0 : i1 - M.it0 + 1] = u
    return Solution(M, full)


def symplectic(f: TestFunction, g: TestFunction) -> float:
    """sigma(f, g) = h * sum(phi_f pi_g - pi_f phi_g) at the reference surface."""
    uf = causal_propagator(f)
    ug = causal_propagator(g)
    return symplectic_data(cauchy_data(uf), cauchy_data(ug), f.ambient.spacing)


def symplectic_data(a: CauchyData, b: CauchyData, h: float) -> float:
    return float(h * np.sum(a.phi * b.pi - a.pi * b.phi))


def pairing(f: TestFunction, u: Solution) -> float:
    """Grid pairing h^2 * sum(f * u)."""
    h = f.ambient.spacing
    return float(h * h * np.sum(f.on_grid() * u.values))


def smoothstep_profile(s: np.ndarray) -> np.ndarray:
    """C-infinity monotone step: 0 at s<=0, 1 at s>=1 (integrated bump)."""
    grid = np.linspace(0.0, 1.0, 4097)
    core = np.zeros_like(grid)
    inner = (grid > 0) & (grid < 1)
    core[inner] = np.exp(-1.0 / (grid[inner] * (1.0 - grid[inner])))
    cdf = np.concatenate([[0.0], np.cumsum((core[1:] + core[:-1]) * 0.5)])
    cdf /= cdf[-1]
    return np.interp(np.clip(s, 0.0, 1.0), grid, cdf)


def slab_compress(f: TestFunction, t_lo: float, t_hi: float) -> TestFunction:
    """Compress a source into a time slab without changing its E-image.

    With u = E f and a smooth monotone chi(t) that is 0 below the slab and
    1 above it, the returned source is P_h(chi * u) evaluated on the slab
    rows.  Off the slab chi is constant and u is homogeneous, so the
    result is supported in [t_lo, t_hi] exactly, and its causal propagator
    reproduces E f (an identity of the discrete recursion, checked in the
    tests at rounding level).
    """
    M = f.ambient
    h = M.spacing
    n1 = round(t_lo / h)
    n2 = round(t_hi / h)
    if not n1 < n2:
        raise ValueError("need t_lo < t_hi")
    if not (M.it0 + 1 <= n1 and n2 <= M.it1 - 1):
        raise WindowTooSmall("slab must be interior to the window")
    u = causal_propagator(f)
    rows = np.arange(n1, n2 + 1)
    s = (rows - n1) / (n2 - n1)
    chi = smoothstep_profile(s)
    # w = chi * u on rows n1-1 .. n2+1 (chi = 0 below, 1 above)
    k1, k2 = n1 - M.it0, n2 - M.it0
    w = np.zeros((k2 - k1 + 3, M.n_x))
    w[1:-1] = chi[:, None] * u.values[k1 : k2 + 1]
    w[-1] = u.values[k2 + 1]
    hh = h * h
    mm = M.mass * M.mass
    interior = w[1:-1]
    d2t = (w[2:] - 2.0 * interior + w[:-2]) / hh
    if M.kind is SpacetimeKind.CYLINDER:
        lap = (np.roll(interior, -1, axis=1) - 2.0 * interior
               + np.roll(interior, 1, axis=1)) / hh
    else:
        lap = np.zeros_like(interior)
        lap[:, 1:-1] = (interior[:, 2:] - 2.0 * interior[:, 1:-1]
                        + interior[:, :-2]) / hh
    f2 = d2t - lap + mm * interior
    grid = np.zeros((M.n_t, M.n_x))
    grid[k1 : k2 + 1] = f2
    return from_grid(M, grid)
