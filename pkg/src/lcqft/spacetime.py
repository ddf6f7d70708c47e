"""Flat 1+1D globally hyperbolic spacetimes, regions, and isometric embeddings.

Two object families are supported: finite grid windows of the Minkowski
plane, and flat cylinders (circle circumference L, with L/h cells around
the circle).  The grid is square with dt = dx = h, so the numerical
domain of dependence of the leapfrog stencil coincides with the exact
light cone and lattice causality statements are exact.

Morphisms are affine isometries: grid-snapped translations everywhere,
plus boosts into Minkowski-plane targets.  ``validate_embedding`` checks
injectivity, a proper orthochronous linear part, and causal convexity of
the image (by lattice reachability), and stamps the embedding with a
validation token that downstream algebra maps require.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

from .errors import (
    CausalConvexityViolated,
    DomainMismatch,
    GridMismatch,
    MassMismatch,
    NotInjective,
    OrientationViolated,
    OutOfDomain,
    UnsupportedMorphism,
)

#: Largest admissible value of mass * spacing (explicit mass term stability).
MAX_MASS_SPACING = 0.1


class SpacetimeKind(enum.Enum):
    MINKOWSKI_PLANE = "minkowski"
    CYLINDER = "cylinder"


class CausalClass(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


@dataclass(frozen=True)
class Spacetime2D:
    """A flat spacetime grid window.

    The window is stored as inclusive grid-index ranges; coordinates are
    recovered as ``index * spacing``.  For cylinders the spatial indices
    run over one period 0..n_x-1 and ``ix1 - ix0 + 1`` cells close the
    circle exactly.
    """

    kind: SpacetimeKind
    spacing: float
    mass: float
    it0: int
    it1: int
    ix0: int
    ix1: int

    @property
    def n_t(self) -> int:
        return self.it1 - self.it0 + 1

    @property
    def n_x(self) -> int:
        return self.ix1 - self.ix0 + 1

    @property
    def t_min(self) -> float:
        return self.it0 * self.spacing

    @property
    def t_max(self) -> float:
        return self.it1 * self.spacing

    @property
    def x_min(self) -> float:
        return self.ix0 * self.spacing

    @property
    def x_max(self) -> float:
        return self.ix1 * self.spacing

    @property
    def circumference(self) -> float:
        if self.kind is not SpacetimeKind.CYLINDER:
            raise AttributeError("circumference is defined for cylinders only")
        return self.n_x * self.spacing

    @property
    def ref_row(self) -> int:
        """Row index of the reference Cauchy surface t = 0."""
        return -self.it0

    def times(self) -> np.ndarray:
        return self.spacing * np.arange(self.it0, self.it1 + 1)

    def positions(self) -> np.ndarray:
        return self.spacing * np.arange(self.ix0, self.ix1 + 1)

    def row_of_time(self, t: float) -> int:
        """Snap a time coordinate to its grid row."""
        n = round(t / self.spacing)
        if not self.it0 <= n <= self.it1:
            raise OutOfDomain(f"time {t} outside window [{self.t_min}, {self.t_max}]")
        return n - self.it0

    def col_of_position(self, x: float) -> int:
        j = round(x / self.spacing)
        if self.kind is SpacetimeKind.CYLINDER:
            return (j - self.ix0) % self.n_x
        if not self.ix0 <= j <= self.ix1:
            raise OutOfDomain(f"position {x} outside window [{self.x_min}, {self.x_max}]")
        return j - self.ix0

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind.value,
            "h": self.spacing,
            "m": self.mass,
            "window": {"t": [self.t_min, self.t_max]},
        }
        if self.kind is SpacetimeKind.CYLINDER:
            doc["L"] = self.circumference
        else:
            doc["window"]["x"] = [self.x_min, self.x_max]
        return doc


def spacetime_from_json(doc: dict) -> Spacetime2D:
    """Inverse of Spacetime2D.to_json."""
    kind = doc["kind"]
    h = doc["h"]
    t = tuple(doc["window"]["t"])
    if kind == SpacetimeKind.CYLINDER.value:
        return cylinder(h, doc["L"], t, doc.get("m", 0.0))
    return minkowski_plane(h, t, tuple(doc["window"]["x"]), doc.get("m", 0.0))


def scene_to_json(M: Spacetime2D, regions: Iterable["Region"] = ()) -> dict:
    """One document holding a spacetime and its region list."""
    doc = M.to_json()
    doc["regions"] = [r.to_json() for r in regions]
    return doc


def scene_from_json(doc: dict) -> tuple[Spacetime2D, list["Region"]]:
    M = spacetime_from_json(doc)
    regions = []
    for r in doc.get("regions", []):
        p = r["params"]
        if r["shape"] == "double_cone":
            regions.append(double_cone(M, tuple(p["center"]), p["radius"]))
        elif r["shape"] == "slab":
            regions.append(time_slab(M, p["t_lo"], p["t_hi"]))
        elif r["shape"] == "grid_set":
            regions.append(grid_set(M, (tuple(c) for c in p["cells"])))
        else:
            raise ValueError(f"unknown region shape {r['shape']!r}")
    return M, regions


def minkowski_plane(
    spacing: float,
    t_window: tuple[float, float],
    x_window: tuple[float, float],
    mass: float = 0.0,
) -> Spacetime2D:
    """A rectangular grid window of the Minkowski plane.

    Window bounds snap to the grid; t = 0 must be an interior grid time
    (it carries the reference Cauchy surface).
    """
    _check_mass(mass, spacing)
    it0, it1 = round(t_window[0] / spacing), round(t_window[1] / spacing)
    ix0, ix1 = round(x_window[0] / spacing), round(x_window[1] / spacing)
    if not it0 < 0 < it1:
        raise ValueError("t = 0 must be interior to the time window")
    if ix1 - ix0 < 4:
        raise ValueError("spatial window too narrow")
    return Spacetime2D(SpacetimeKind.MINKOWSKI_PLANE, spacing, mass, it0, it1, ix0, ix1)


def cylinder(
    spacing: float,
    circumference: float,
    t_window: tuple[float, float],
    mass: float = 0.0,
) -> Spacetime2D:
    """A flat cylinder R x S^1; ``circumference / spacing`` must be integral."""
    _check_mass(mass, spacing)
    n_x = circumference / spacing
    if abs(n_x - round(n_x)) > 1e-9 or round(n_x) < 4:
        raise ValueError("circumference must be a positive integer multiple of the spacing")
    it0, it1 = round(t_window[0] / spacing), round(t_window[1] / spacing)
    if not it0 < 0 < it1:
        raise ValueError("t = 0 must be interior to the time window")
    return Spacetime2D(SpacetimeKind.CYLINDER, spacing, mass, it0, it1, 0, round(n_x) - 1)


def _check_mass(mass: float, spacing: float) -> None:
    if mass < 0:
        raise ValueError("mass must be nonnegative")
    if mass * spacing > MAX_MASS_SPACING:
        raise ValueError(
            f"mass * spacing = {mass * spacing:.4g} exceeds {MAX_MASS_SPACING}; "
            "refine the grid or lower the mass"
        )


# --------------------------------------------------------------------------
# causal structure


def causal_relation(M: Spacetime2D, p: tuple[float, float], q: tuple[float, float]) -> CausalClass:
    """Classify the separation of two (grid-snapped) points.

    On the cylinder the winding minimizing the spatial separation decides:
    the pair is timelike if any winding makes it so, lightlike if the best
    winding is null.  Integer cell arithmetic keeps the classification
    exact.
    """
    np_, jp_ = _snap_point(M, p)
    nq_, jq_ = _snap_point(M, q)
    dn = abs(nq_ - np_)
    dj = abs(jq_ - jp_)
    if M.kind is SpacetimeKind.CYLINDER:
        dj = min(dj % M.n_x, M.n_x - dj % M.n_x)
    if dn > dj:
        return CausalClass.TIMELIKE
    if dn == dj:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE


def _snap_point(M: Spacetime2D, p: tuple[float, float]) -> tuple[int, int]:
    """Absolute (time, space) grid indices of a point, with domain check."""
    t, x = p
    n = round(t / M.spacing)
    j = round(x / M.spacing)
    if not M.it0 <= n <= M.it1:
        raise OutOfDomain(f"time {t} outside window")
    if M.kind is SpacetimeKind.CYLINDER:
        j = j % M.n_x
    elif not M.ix0 <= j <= M.ix1:
        raise OutOfDomain(f"position {x} outside window")
    return n, j


# --------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class DoubleCone:
    """Open diamond |t - t_c| + d(x, x_c) < r (d = circle distance on cylinders)."""

    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class TimeSlab:
    """All space between two grid times, inclusive."""

    t_lo: float
    t_hi: float


@dataclass(frozen=True)
class GridSet:
    """Explicit set of absolute (time, space) grid indices."""

    cells: frozenset


RegionShape = Union[DoubleCone, TimeSlab, GridSet]


@dataclass(frozen=True)
class Region:
    ambient: Spacetime2D
    shape: RegionShape

    def mask(self) -> np.ndarray:
        """Boolean node mask over the ambient grid window."""
        return _region_mask(self.ambient, self.shape)

    def is_empty(self) -> bool:
        return not bool(self.mask().any())

    def to_json(self) -> dict:
        s = self.shape
        if isinstance(s, DoubleCone):
            return {"shape": "double_cone", "params": {"center": list(s.center), "radius": s.radius}}
        if isinstance(s, TimeSlab):
            return {"shape": "slab", "params": {"t_lo": s.t_lo, "t_hi": s.t_hi}}
        return {"shape": "grid_set", "params": {"cells": sorted(s.cells)}}


@lru_cache(maxsize=256)
def _region_mask(M: Spacetime2D, shape: RegionShape) -> np.ndarray:
    h = M.spacing
    T, X = np.meshgrid(M.times(), M.positions(), indexing="ij")
    if isinstance(shape, DoubleCone):
        tc, xc = shape.center
        tc, xc = round(tc / h) * h, round(xc / h) * h
        dx = np.abs(X - xc)
        if M.kind is SpacetimeKind.CYLINDER:
            L = M.circumference
            dx = np.minimum(dx % L, L - dx % L)
        out = np.abs(T - tc) + dx < shape.radius - 1e-12 * h
    elif isinstance(shape, TimeSlab):
        lo, hi = round(shape.t_lo / h) * h, round(shape.t_hi / h) * h
        out = (T >= lo - 0.5 * h) & (T <= hi + 0.5 * h)
    elif isinstance(shape, GridSet):
        out = np.zeros((M.n_t, M.n_x), dtype=bool)
        for n, j in shape.cells:
            if M.it0 <= n <= M.it1:
                jj = (j - M.ix0) % M.n_x if M.kind is SpacetimeKind.CYLINDER else j - M.ix0
                if 0 <= jj < M.n_x:
                    out[n - M.it0, jj] = True
    else:  # pragma: no cover
        raise TypeError(f"unknown region shape {shape!r}")
    out.flags.writeable = False
    return out


def double_cone(M: Spacetime2D, center: tuple[float, float], radius: float) -> Region:
    return Region(M, DoubleCone(center, radius))


def time_slab(M: Spacetime2D, t_lo: float, t_hi: float) -> Region:
    return Region(M, TimeSlab(t_lo, t_hi))


def grid_set(M: Spacetime2D, cells: Iterable[tuple[int, int]]) -> Region:
    return Region(M, GridSet(frozenset(cells)))


# --------------------------------------------------------------------------
# lattice causal convexity


def is_causally_convex(M: Spacetime2D, region: Region) -> bool:
    """Decide causal convexity of a region by lattice reachability.

    A lattice causal step moves one row forward to the three columns
    inside the unit light cone.  The region is causally convex iff for
    every ordered node pair (p, q) of the region, q is reachable from p
    through region nodes exactly when it is reachable through the full
    grid.  Forward paths suffice: reachability is time-symmetric here.
    """
    if region.ambient != M:
        raise DomainMismatch("region does not live on this spacetime")
    return _convex_cached(M, region.shape)


@lru_cache(maxsize=256)
def _convex_cached(M: Spacetime2D, shape: RegionShape) -> bool:
    mask = _region_mask(M, shape)
    return _reachability_convex(mask, periodic=M.kind is SpacetimeKind.CYLINDER)


def _reachability_convex(mask: np.ndarray, periodic: bool) -> bool:
    levels = np.flatnonzero(mask.any(axis=1))
    if levels.size == 0:
        return True
    if mask.all():
        # restricted and free spreads coincide step by step
        return True
    active = mask[levels[0] : levels[-1] + 1]
    contiguous = np.array_equal(levels, np.arange(levels[0], levels[-1] + 1))
    if contiguous and (active == active[0]).all():
        # time-independent cross-section: one DP per distinct column
        return _convex_time_independent(active[0], active.shape[0], periodic)
    if contiguous:
        iv = _interval_rows(active, periodic)
        if iv is not None:
            lo, hi = iv
            base = int(lo.min())
            key = ((lo - base).tobytes(), (hi - base).tobytes(),
                   mask.shape[1], periodic)
            if key not in _INTERVAL_CACHE:
                _INTERVAL_CACHE[key] = _convex_intervals(lo, hi, mask.shape[1], periodic)
            return _INTERVAL_CACHE[key]
    return _convex_generic(mask, levels, periodic)


_INTERVAL_CACHE: dict = {}


def _interval_rows(active: np.ndarray, periodic: bool):
    """Per-row [lo, hi] bounds when every active row is one contiguous run
    (no seam wrapping); None when the shape is not of that form."""
    n_rows, n_x = active.shape
    lo = np.empty(n_rows, dtype=np.int64)
    hi = np.empty(n_rows, dtype=np.int64)
    counts = active.sum(axis=1)
    first = np.argmax(active, axis=1)
    last = n_x - 1 - np.argmax(active[:, ::-1], axis=1)
    if np.any(counts == 0):
        return None
    if np.any(last - first + 1 != counts):
        return None  # a gap inside some row
    lo[:] = first
    hi[:] = last
    return lo, hi


def _convex_intervals(lo: np.ndarray, hi: np.ndarray, n_x: int, periodic: bool) -> bool:
    """Interval-endpoint reachability DP, all sources of a level at once.

    The restricted reachable set from one source through interval rows is
    itself an interval, so spreading is endpoint arithmetic; the free set
    at distance d is [j - d, j + d] (plus wrap images on cylinders)
    intersected with the row.

    For a time-independent interval the level-0 sources see every (j, d)
    combination any later level sees, so one source level suffices.
    """
    n_rows = lo.size
    constant = bool((lo == lo[0]).all() and (hi == hi[0]).all())
    if constant and not periodic:
        return True  # endpoint recursion equals the free cone at every step
    levels = range(1) if constant else range(n_rows - 1)
    for lev in levels:
        js = np.arange(lo[lev], hi[lev] + 1)
        a = js.copy()
        b = js.copy()
        dead = np.zeros(js.size, dtype=bool)
        for d in range(1, n_rows - lev):
            row_lo, row_hi = lo[lev + d], hi[lev + d]
            a = np.maximum(a - 1, row_lo)
            b = np.minimum(b + 1, row_hi)
            dead |= a > b
            free_a = np.maximum(js - d, row_lo)
            free_b = np.minimum(js + d, row_hi)
            nonempty = free_a <= free_b
            bad = nonempty & (dead | (a != free_a) | (b != free_b))
            if periodic:
                lw = js + d - n_x  # wrap arrival from the right seam
                lw_hit = lw >= row_lo
                lw_cov = ~dead & (a == row_lo) & (np.minimum(lw, row_hi) <= b)
                bad |= lw_hit & ~lw_cov
                rw = js - d + n_x
                rw_hit = rw <= row_hi
                rw_cov = ~dead & (b == row_hi) & (np.maximum(rw, row_lo) >= a)
                bad |= rw_hit & ~rw_cov
            if bad.any():
                return False
    return True


def _convex_time_independent(row: np.ndarray, n_rows: int, periodic: bool) -> bool:
    n_x = row.size
    src = np.flatnonzero(row)
    state = np.zeros((src.size, n_x), dtype=bool)
    state[np.arange(src.size), src] = True
    cols = np.arange(n_x)
    dj = np.abs(cols[None, :] - src[:, None])
    if periodic:
        dj = np.minimum(dj, n_x - dj)
    for dist in range(1, n_rows):
        state = _spread(state, periodic) & row
        free = (dj <= dist) & row[None, :]
        if not np.array_equal(state, free):
            return False
    return True


def _convex_generic(mask: np.ndarray, levels: np.ndarray, periodic: bool) -> bool:
    n_x = mask.shape[1]
    cols = np.arange(n_x)
    last = int(levels[-1])
    for lev in levels:
        src = np.flatnonzero(mask[lev])
        state = np.zeros((src.size, n_x), dtype=bool)
        state[np.arange(src.size), src] = True
        dj = np.abs(cols[None, :] - src[:, None])
        if periodic:
            dj = np.minimum(dj, n_x - dj)
        for nxt in range(int(lev) + 1, last + 1):
            state = _spread(state, periodic) & mask[nxt]
            free = (dj <= nxt - lev) & mask[nxt][None, :]
            if not np.array_equal(state, free):
                return False
    return True


def _spread(state: np.ndarray, periodic: bool) -> np.ndarray:
    out = state.copy()
    if periodic:
        out |= np.roll(state, 1, axis=1)
        out |= np.roll(state, -1, axis=1)
    else:
        out[:, 1:] |= state[:, :-1]
        out[:, :-1] |= state[:, 1:]
    return out


def regions_spacelike(O1: Region, O2: Region) -> bool:
    """True iff every node pair across the two regions is spacelike.

    Works slice by slice in integer cell units (nearest-column search per
    row pair), so the answer is exact.
    """
    if O1.ambient != O2.ambient:
        raise DomainMismatch("regions live on different spacetimes")
    M = O1.ambient
    m1, m2 = O1.mask(), O2.mask()
    periodic = M.kind is SpacetimeKind.CYLINDER
    n_x = M.n_x
    rows1 = [np.flatnonzero(r) for r in m1]
    rows2 = [np.flatnonzero(r) for r in m2]
    for n1, c1 in enumerate(rows1):
        if c1.size == 0:
            continue
        for n2, c2 in enumerate(rows2):
            if c2.size == 0:
                continue
            if _min_col_gap(c1, c2, n_x, periodic) <= abs(n1 - n2):
                return False
    return True


def _min_col_gap(c1: np.ndarray, c2: np.ndarray, n_x: int, periodic: bool) -> int:
    """Minimum |column difference| between two sorted index sets."""
    if periodic:
        c2 = np.concatenate([c2 - n_x, c2, c2 + n_x])
    idx = np.searchsorted(c2, c1)
    best = np.iinfo(np.int64).max
    for off in (-1, 0):
        k = np.clip(idx + off, 0, c2.size - 1)
        best = min(best, int(np.abs(c1 - c2[k]).min()))
    return best


# --------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class Embedding:
    """An affine candidate morphism, possibly restricted to a source region.

    ``validated`` is the proof token: it is set only by
    ``validate_embedding`` (composition of two validated embeddings keeps
    it).  Reflection flags exist so that validation has improper and
    antichronous linear parts to reject; valid embeddings never carry
    them.
    """

    source: Spacetime2D
    target: Spacetime2D
    shift_t: float = 0.0
    shift_x: float = 0.0
    rapidity: float = 0.0
    time_reflect: bool = False
    space_reflect: bool = False
    source_region: Region | None = None
    validated: bool = field(default=False, compare=False)

    @property
    def is_translation(self) -> bool:
        return self.rapidity == 0.0 and not self.time_reflect and not self.space_reflect

    def map_point(self, p: tuple[float, float]) -> tuple[float, float]:
        t, x = p
        if self.time_reflect:
            t = -t
        if self.space_reflect:
            x = -x
        if self.rapidity != 0.0:
            ch, sh = math.cosh(self.rapidity), math.sinh(self.rapidity)
            t, x = t * ch + x * sh, t * sh + x * ch
        t, x = t + self.shift_t, x + self.shift_x
        if self.target.kind is SpacetimeKind.CYLINDER:
            x = x % self.target.circumference
        return t, x

    def shift_cells(self) -> tuple[int, int]:
        """Translation offsets in whole cells (translations only)."""
        if not self.is_translation:
            raise UnsupportedMorphism("boost embeddings have no integer cell shift")
        h = self.source.spacing
        return round(self.shift_t / h), round(self.shift_x / h)


def identity_embedding(M: Spacetime2D) -> Embedding:
    return Embedding(M, M, validated=True)


def translation_embedding(
    source: Spacetime2D,
    target: Spacetime2D,
    dt: float,
    dx: float,
    region: Region | None = None,
) -> Embedding:
    """Grid-snapped translation; offsets snap to whole cells."""
    h = source.spacing
    dt, dx = round(dt / h) * h, round(dx / h) * h
    if target.kind is SpacetimeKind.CYLINDER:
        dx = (round(dx / h) % target.n_x) * h
    return Embedding(source, target, dt, dx, source_region=region)


def boost_embedding(
    source: Spacetime2D,
    target: Spacetime2D,
    rapidity: float,
    dt: float = 0.0,
    dx: float = 0.0,
    region: Region | None = None,
) -> Embedding:
    if target.kind is SpacetimeKind.CYLINDER and rapidity != 0.0:
        raise UnsupportedMorphism("boosts are not isometries of the cylinder")
    h = source.spacing
    return Embedding(source, target, round(dt / h) * h, round(dx / h) * h,
                     rapidity=rapidity, source_region=region)


def region_inclusion(M: Spacetime2D, region: Region) -> Embedding:
    """The canonical inclusion of a region, as a region-sourced embedding."""
    if region.ambient != M:
        raise DomainMismatch("region does not live on this spacetime")
    return Embedding(M, M, source_region=region)


def compose_embeddings(outer: Embedding, inner: Embedding) -> Embedding:
    """Composition outer after inner; affine data composes exactly.

    The validation token carries over when both factors hold one
    (composites of valid morphisms are valid).
    """
    if inner.target != outer.source:
        raise DomainMismatch("inner target differs from outer source")
    if outer.source_region is not None:
        outer_mask = outer.source_region.mask()
        Ms = outer.source
        for n, j in image_node_set(inner):
            jj = (j - Ms.ix0) % Ms.n_x if Ms.kind is SpacetimeKind.CYLINDER else j - Ms.ix0
            if not (Ms.it0 <= n <= Ms.it1 and 0 <= jj < Ms.n_x and outer_mask[n - Ms.it0, jj]):
                raise DomainMismatch("inner image is not contained in the outer source region")
    sgn = (-1.0 if outer.time_reflect else 1.0) * (-1.0 if outer.space_reflect else 1.0)
    chi = outer.rapidity + sgn * inner.rapidity
    bt, bx = inner.shift_t, inner.shift_x
    if outer.time_reflect:
        bt = -bt
    if outer.space_reflect:
        bx = -bx
    if outer.rapidity != 0.0:
        ch, sh = math.cosh(outer.rapidity), math.sinh(outer.rapidity)
        bt, bx = bt * ch + bx * sh, bt * sh + bx * ch
    bt, bx = bt + outer.shift_t, bx + outer.shift_x
    if outer.target.kind is SpacetimeKind.CYLINDER:
        bx = bx % outer.target.circumference
    return Embedding(
        inner.source,
        outer.target,
        bt,
        bx,
        rapidity=chi,
        time_reflect=outer.time_reflect ^ inner.time_reflect,
        space_reflect=outer.space_reflect ^ inner.space_reflect,
        source_region=inner.source_region,
        validated=inner.validated and outer.validated,
    )


def _source_nodes(e: Embedding) -> tuple[np.ndarray, np.ndarray]:
    """Absolute (time, space) indices of the domain nodes, vectorized."""
    M = e.source
    if e.source_region is None:
        ns, js = np.meshgrid(
            np.arange(M.it0, M.it1 + 1), np.arange(M.ix0, M.ix1 + 1), indexing="ij"
        )
        return ns.ravel(), js.ravel()
    ns, js = np.nonzero(e.source_region.mask())
    return ns + M.it0, js + M.ix0


def _translation_image_nodes(e: Embedding) -> tuple[np.ndarray, np.ndarray]:
    ns, js = _source_nodes(e)
    kt, kx = e.shift_cells()
    nt, nx = ns + kt, js + kx
    if e.target.kind is SpacetimeKind.CYLINDER:
        nx = nx % e.target.n_x
    return nt, nx


def _boost_image_mask(e: Embedding) -> np.ndarray:
    """Pullback rasterization: target nodes whose preimage lies in the domain.

    Affine maps are injective, so no collision check is needed on this
    path; boundary membership is resolved at half-cell granularity.
    """
    h = e.source.spacing
    tgt = e.target
    T, X = np.meshgrid(tgt.times(), tgt.positions(), indexing="ij")
    t = T - e.shift_t
    x = X - e.shift_x
    ch, sh = math.cosh(e.rapidity), math.sinh(e.rapidity)
    t, x = t * ch - x * sh, -t * sh + x * ch
    if e.space_reflect:
        x = -x
    if e.time_reflect:
        t = -t
    tol = 0.5 * h
    Ms = e.source
    inside = (
        (t >= Ms.t_min - tol) & (t <= Ms.t_max + tol)
        & (x >= Ms.x_min - tol) & (x <= Ms.x_max + tol)
    )
    if e.source_region is not None:
        shape = e.source_region.shape
        if not isinstance(shape, DoubleCone):
            raise UnsupportedMorphism("boost sources must be windows or double cones")
        tc, xc = shape.center
        tc, xc = round(tc / h) * h, round(xc / h) * h
        inside &= np.abs(t - tc) + np.abs(x - xc) <= shape.radius + tol - h
    return inside


def image_node_set(e: Embedding) -> list[tuple[int, int]]:
    """Image of the domain nodes at cell granularity (absolute target indices)."""
    tgt = e.target
    if e.is_translation:
        nt, nx = _translation_image_nodes(e)
        return list(zip(nt.tolist(), nx.tolist()))
    rows, cols = np.nonzero(_boost_image_mask(e))
    return [(int(n) + tgt.it0, int(j) + tgt.ix0) for n, j in zip(rows, cols)]


def validate_embedding(e: Embedding) -> Embedding:
    """Check the admissibility conditions and return a token-bearing copy.

    Raises GridMismatch / MassMismatch on parameter mismatches,
    OrientationViolated for improper or antichronous linear parts,
    NotInjective when two domain cells collide in the target,
    OutOfDomain when the image leaves the target window, and
    CausalConvexityViolated when the image fails lattice reachability.
    """
    if e.source.spacing != e.target.spacing:
        raise GridMismatch(
            f"source spacing {e.source.spacing} != target spacing {e.target.spacing}")
    if e.source.mass != e.target.mass:
        raise MassMismatch(f"source mass {e.source.mass} != target mass {e.target.mass}")
    if e.time_reflect or e.space_reflect:
        raise OrientationViolated("linear part must be proper orthochronous")
    if e.rapidity != 0.0 and e.target.kind is SpacetimeKind.CYLINDER:
        raise UnsupportedMorphism("boosts are not isometries of the cylinder")
    if e.source.kind is SpacetimeKind.CYLINDER:
        if e.source_region is None:
            if e.target.kind is not SpacetimeKind.CYLINDER:
                raise UnsupportedMorphism("a full cylinder window embeds only in a cylinder")
            if e.source.circumference != e.target.circumference:
                raise NotInjective("cylinders of different circumference are not isometric")
        elif e.target.kind is not SpacetimeKind.CYLINDER:
            raise UnsupportedMorphism("cylinder-hosted regions embed only into cylinders here")

    tgt = e.target
    if e.is_translation:
        nt, nx = _translation_image_nodes(e)
        if nt.min() < tgt.it0 or nt.max() > tgt.it1:
            raise OutOfDomain("image leaves the target time window")
        if tgt.kind is not SpacetimeKind.CYLINDER and (nx.min() < tgt.ix0 or nx.max() > tgt.ix1):
            raise OutOfDomain("image leaves the target spatial window")
        mask = np.zeros((tgt.n_t, tgt.n_x), dtype=bool)
        cols = nx if tgt.kind is SpacetimeKind.CYLINDER else nx - tgt.ix0
        mask[nt - tgt.it0, cols] = True
        if mask.sum() != nt.size:
            raise NotInjective("two source cells map to the same target cell")
    else:
        # boosts are affine, hence injective; check coverage via corner images
        h = e.source.spacing
        ch, sh = math.cosh(e.rapidity), math.sinh(e.rapidity)
        Ms = e.source
        for tc, xc in ((Ms.t_min, Ms.x_min), (Ms.t_min, Ms.x_max),
                       (Ms.t_max, Ms.x_min), (Ms.t_max, Ms.x_max)):
            ti = tc * ch + xc * sh + e.shift_t
            xi = tc * sh + xc * ch + e.shift_x
            if not (tgt.t_min - 0.5 * h <= ti <= tgt.t_max + 0.5 * h
                    and tgt.x_min - 0.5 * h <= xi <= tgt.x_max + 0.5 * h):
                if e.source_region is None:
                    raise OutOfDomain("image leaves the target window")
        mask = _boost_image_mask(e)
        if e.source_region is not None:
            # region images must not touch the window edge (clipped rasterization)
            if mask[0].any() or mask[-1].any() or mask[:, 0].any() or mask[:, -1].any():
                raise OutOfDomain("image leaves the target window")
    if not _reachability_convex(mask, periodic=tgt.kind is SpacetimeKind.CYLINDER):
        raise CausalConvexityViolated("image is not causally convex in the target")
    return replace(e, validated=True)
