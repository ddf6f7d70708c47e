"""Compactly supported grid-sampled test functions and their pushforwards.

A test function stores only its support box (plus a one-cell zero margin)
and is scattered onto the full grid window on demand.  Pushforwards along
grid translations relocate samples bitwise; pushforwards along boosts
resample through an interpolating cubic spline, which is fourth-order
accurate on smooth data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import map_coordinates

from .errors import DomainMismatch, OutOfDomain
from .spacetime import Embedding, Spacetime2D, SpacetimeKind

#: Extra cells a cubic-spline resample may smear support by, per side.
SPLINE_PAD = 2


@dataclass(frozen=True)
class TestFunction:
    """Real samples over a support box; zero on the box boundary layer.

    ``it0``/``ix0`` are the absolute grid indices of the box corner; on a
    cylinder the box columns wrap modulo the circumference.
    """

    ambient: Spacetime2D
    it0: int
    ix0: int
    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 2:
            raise ValueError("samples must be a 2d array")
        if v.size and (np.any(v[0] != 0) or np.any(v[-1] != 0)
                       or np.any(v[:, 0] != 0) or np.any(v[:, -1] != 0)):
            raise ValueError("samples must vanish on the support box boundary layer")
        M = self.ambient
        if not (M.it0 <= self.it0 and self.it0 + v.shape[0] - 1 <= M.it1):
            raise OutOfDomain("support box leaves the time window")
        if M.kind is SpacetimeKind.CYLINDER:
            if v.shape[1] > M.n_x:
                raise OutOfDomain("support box wider than the cylinder")
        elif not (M.ix0 <= self.ix0 and self.ix0 + v.shape[1] - 1 <= M.ix1):
            raise OutOfDomain("support box leaves the spatial window")
        v.flags.writeable = False

    # -- geometry ----------------------------------------------------------

    @property
    def box_shape(self) -> tuple[int, int]:
        return self.values.shape

    def rows(self) -> np.ndarray:
        """Absolute time indices of the box rows."""
        return np.arange(self.it0, self.it0 + self.values.shape[0])

    def support_rows(self) -> tuple[int, int]:
        """Absolute time-index range (lo, hi) where samples are nonzero."""
        nz = np.flatnonzero(np.any(self.values != 0.0, axis=1))
        if nz.size == 0:
            return (self.it0, self.it0)
        return (self.it0 + int(nz[0]), self.it0 + int(nz[-1]))

    def column_indices(self) -> np.ndarray:
        """Grid column indices (0-based within the window) of the box columns."""
        M = self.ambient
        cols = np.arange(self.ix0, self.ix0 + self.values.shape[1])
        if M.kind is SpacetimeKind.CYLINDER:
            return cols % M.n_x
        return cols - M.ix0

    def on_grid(self) -> np.ndarray:
        """Scatter the samples onto the full grid window."""
        M = self.ambient
        out = np.zeros((M.n_t, M.n_x))
        out[self.it0 - M.it0 : self.it0 - M.it0 + self.values.shape[0],
            self.column_indices()] = self.values
        return out

    def support_mask(self, rel_tol: float = 0.0) -> np.ndarray:
        """Nonzero-sample mask; a relative floor screens out spline-tail
        dust when comparing supports of resampled functions."""
        grid = self.on_grid()
        if rel_tol == 0.0:
            return grid != 0.0
        return np.abs(grid) > rel_tol * max(float(np.abs(grid).max()), 1e-300)

    # -- linear structure ---------------------------------------------------

    def scaled(self, a: float) -> "TestFunction":
        return TestFunction(self.ambient, self.it0, self.ix0, a * self.values)

    def __add__(self, other: "TestFunction") -> "TestFunction":
        if self.ambient != other.ambient:
            raise DomainMismatch("test functions live on different spacetimes")
        M = self.ambient
        grid = self.on_grid() + other.on_grid()
        return from_grid(M, grid)

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        return self + other.scaled(-1.0)

    def __rmul__(self, a: float) -> "TestFunction":
        return self.scaled(float(a))

    def norm_l2(self) -> float:
        return float(np.sqrt(self.ambient.spacing**2 * np.sum(self.values**2)))

    def integral(self) -> float:
        return float(self.ambient.spacing**2 * np.sum(self.values))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.to_json(),
            "support_box": {
                "it0": self.it0,
                "ix0": self.ix0,
                "nt": self.values.shape[0],
                "nx": self.values.shape[1],
            },
            "samples": [float(v) for v in self.values.ravel()],
        }

    def to_csv(self) -> str:
        h = self.ambient.spacing
        lines = ["t,x,value"]
        for i in range(self.values.shape[0]):
            for j in range(self.values.shape[1]):
                lines.append(f"{(self.it0 + i) * h!r},{(self.ix0 + j) * h!r},"
                             f"{float(self.values[i, j])!r}")
        return "\n".join(lines) + "\n"


def from_json(doc: dict, ambient: Spacetime2D) -> TestFunction:
    box = doc["support_box"]
    vals = np.array(doc["samples"], dtype=float).reshape(box["nt"], box["nx"])
    return TestFunction(ambient, box["it0"], box["ix0"], vals)


def from_grid(M: Spacetime2D, grid: np.ndarray) -> TestFunction:
    """Trim a full-window array to its support box plus a one-cell margin."""
    nz_r = np.flatnonzero(np.any(grid != 0.0, axis=1))
    nz_c = np.flatnonzero(np.any(grid != 0.0, axis=0))
    if nz_r.size == 0:
        return TestFunction(M, M.it0, M.ix0, np.zeros((1, 1)))
    r0, r1 = max(int(nz_r[0]) - 1, 0), min(int(nz_r[-1]) + 1, M.n_t - 1)
    c0, c1 = max(int(nz_c[0]) - 1, 0), min(int(nz_c[-1]) + 1, M.n_x - 1)
    vals = grid[r0 : r1 + 1, c0 : c1 + 1].copy()
    return TestFunction(M, M.it0 + r0, M.ix0 + c0, vals)


def zero_function(M: Spacetime2D) -> TestFunction:
    return TestFunction(M, M.it0, M.ix0, np.zeros((1, 1)))


def bump(
    M: Spacetime2D,
    center: tuple[float, float],
    radii: tuple[float, float],
    amplitude: float,
) -> TestFunction:
    """The sampled C-infinity bump  amplitude * exp(-1/(1-s))  on s < 1,

    with s = (dt/rt)^2 + (dx/rx)^2 around the (grid-snapped) center.
    The support ellipse plus a one-cell margin must fit in the window.
    """
    h = M.spacing
    rt, rx = radii
    if rt <= 0 or rx <= 0:
        raise ValueError("radii must be positive")
    nc = round(center[0] / h)
    jc = round(center[1] / h)
    kt = math.ceil(rt / h)
    kx = math.ceil(rx / h)
    if not (M.it0 + 1 <= nc - kt and nc + kt <= M.it1 - 1):
        raise OutOfDomain("bump does not fit the time window with a margin")
    if M.kind is SpacetimeKind.CYLINDER:
        if 2 * kx + 3 > M.n_x:
            raise OutOfDomain("bump wraps around the cylinder")
    elif not (M.ix0 + 1 <= jc - kx and jc + kx <= M.ix1 - 1):
        raise OutOfDomain("bump does not fit the spatial window with a margin")
    ts = h * np.arange(nc - kt - 1, nc + kt + 2)
    xs = h * np.arange(jc - kx - 1, jc + kx + 2)
    T, X = np.meshgrid(ts, xs, indexing="ij")
    s = ((T - nc * h) / rt) ** 2 + ((X - jc * h) / rx) ** 2
    vals = np.zeros_like(T)
    inside = s < 1.0
    vals[inside] = amplitude * np.exp(-1.0 / (1.0 - s[inside]))
    return TestFunction(M, nc - kt - 1, jc - kx - 1, vals)


def pushforward(psi: Embedding, f: TestFunction) -> TestFunction:
    """Transport a test function along an embedding.

    Grid translations relocate the support box exactly.  Boosts resample
    at preimage points through an interpolating cubic spline and then
    clear the (already tiny) boundary layer of the widened box so the
    compact-support invariant holds exactly.
    """
    if f.ambient != psi.source:
        raise DomainMismatch("test function does not live on the embedding source")
    if psi.source_region is not None:
        region_mask = psi.source_region.mask()
        if np.any(f.support_mask() & ~region_mask):
            raise DomainMismatch("test function is not supported in the source region")
    h = f.ambient.spacing
    tgt = psi.target
    if psi.is_translation:
        kt, kx = psi.shift_cells()
        it0 = f.it0 + kt
        ix0 = f.ix0 + kx
        if tgt.kind is SpacetimeKind.CYLINDER:
            ix0 = ix0 % tgt.n_x
        return TestFunction(tgt, it0, ix0, f.values)

    ch, sh = math.cosh(psi.rapidity), math.sinh(psi.rapidity)
    # bounding box of the boosted support, padded for the spline footprint
    corners_t, corners_x = [], []
    for dt in (f.it0 * h, (f.it0 + f.values.shape[0] - 1) * h):
        for dx in (f.ix0 * h, (f.ix0 + f.values.shape[1] - 1) * h):
            corners_t.append(dt * ch + dx * sh + psi.shift_t)
            corners_x.append(dt * sh + dx * ch + psi.shift_x)
    bt0 = math.floor(min(corners_t) / h) - SPLINE_PAD
    bt1 = math.ceil(max(corners_t) / h) + SPLINE_PAD
    bx0 = math.floor(min(corners_x) / h) - SPLINE_PAD
    bx1 = math.ceil(max(corners_x) / h) + SPLINE_PAD
    if not (tgt.it0 <= bt0 and bt1 <= tgt.it1 and tgt.ix0 <= bx0 and bx1 <= tgt.ix1):
        raise OutOfDomain("boosted support does not fit the target window")
    # resample the window-wide scatter so the interpolation domain (and
    # with it the spline prefilter) does not depend on the support box;
    # linearity of the pushforward then holds to float rounding
    src_grid = f.on_grid()
    tv = h * np.arange(bt0, bt1 + 1)
    xv = h * np.arange(bx0, bx1 + 1)
    T, X = np.meshgrid(tv, xv, indexing="ij")
    tp = (T - psi.shift_t) * ch - (X - psi.shift_x) * sh
    xp = -(T - psi.shift_t) * sh + (X - psi.shift_x) * ch
    Ms = psi.source
    ci = tp / h - Ms.it0
    cj = xp / h - Ms.ix0
    vals = map_coordinates(src_grid, [ci, cj], order=3, mode="grid-constant", cval=0.0)
    vals[0, :] = vals[-1, :] = 0.0
    vals[:, 0] = vals[:, -1] = 0.0
    return TestFunction(tgt, bt0, bx0, vals)
