"""The covariant assignment of Weyl algebras to spacetimes.

``algebra_of`` hands out the global algebra of a window (or the intrinsic
algebra of a double-cone patch), ``local_algebra`` the subalgebra of
elements generated inside a region, and ``alpha`` the induced
*-morphism action of a validated embedding, realized as Cauchy-data
transport of labels:

  * grid translations relocate the two stored solution rows and evolve
    them to the target reference surface with the same leapfrog kernel
    the solvers use, so translation functoriality is bitwise exact;
  * boosts reconstruct the solution on a strip around the preimage of
    the target reference surface, form fourth-order derivative arrays,
    and resample both through an interpolating cubic spline.

Patch labels (waist data of a double cone) extend by zero to the full
target surface before evolving; the extension is exact because the
solution of any source inside the cone vanishes outside the waist at
waist time.

The executable axiom checks (causality, time slice, covariance) return
Report records with the worst observed deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.ndimage import map_coordinates

from .errors import (
    DomainMismatch,
    NotCausallyConvex,
    NotCausallySeparated,
    ValidationMissing,
    WindowTooSmall,
)
from .greens import slab_compress
from .reports import Report
from .sampling import random_bump_in_cone, random_global_bump
from .spacetime import (
    DoubleCone,
    Embedding,
    Region,
    Spacetime2D,
    SpacetimeKind,
    TimeSlab,
    double_cone,
    is_causally_convex,
    regions_spacelike,
    validate_embedding,
)
from .testfun import SPLINE_PAD, TestFunction, pushforward
from .weyl import (
    LabelSpace,
    WeylElement,
    WeylLabel,
    from_label,
    label_space,
    max_coeff_distance,
    multiply,
    unit,
)

#: Spline footprint + coefficient-tail margin for boost transport, in cells.
_STRIP_PAD = 6


@dataclass(frozen=True)
class AlgebraHandle:
    """Access point to the algebra of a window, patch, or localized region."""

    ambient: Spacetime2D
    space: LabelSpace
    localization: Region | None = None

    def unit(self) -> WeylElement:
        return unit(self.space)

    def generator(self, f: TestFunction) -> WeylElement:
        """W(E f) for a test function admitted by the localization."""
        if self.localization is not None:
            if np.any(f.support_mask() & ~self.localization.mask()):
                raise DomainMismatch("generator support leaves the localization region")
        return from_label(self.space, self.space.label_of(f))

    def admits(self, f: TestFunction) -> bool:
        if f.ambient != self.ambient:
            return False
        if self.localization is None:
            return True
        return not np.any(f.support_mask() & ~self.localization.mask())


def algebra_of(M: Spacetime2D, patch: Region | None = None) -> AlgebraHandle:
    """The global algebra of a window, or the intrinsic algebra of a patch."""
    return AlgebraHandle(M, label_space(M, patch))


def local_algebra(M: Spacetime2D, O: Region) -> AlgebraHandle:
    """The subalgebra of A(M) generated inside O; O must be causally convex."""
    if not is_causally_convex(M, O):
        raise NotCausallyConvex("region fails lattice causal convexity")
    return AlgebraHandle(M, label_space(M), localization=O)


# --------------------------------------------------------------------------
# morphism action


@dataclass(frozen=True)
class MorphismAction:
    """Unital *-morphism induced by a validated embedding."""

    psi: Embedding
    source: LabelSpace
    target: LabelSpace

    def on_label(self, l: WeylLabel) -> WeylLabel:
        if l.space is not self.source:
            raise DomainMismatch("label does not live on the morphism source")
        if self.psi.is_translation:
            return _transport_translation(self.psi, self.source, self.target, l)
        return _transport_boost(self.psi, self.source, self.target, l)

    def __call__(self, a: WeylElement) -> WeylElement:
        if a.space is not self.source:
            raise DomainMismatch("element does not live on the morphism source")
        return WeylElement.make(self.target, _map_terms(self, a))


def _map_terms(action: MorphismAction, a: WeylElement) -> dict:
    out: dict = {}
    for l, c in a.terms:
        lab = action.on_label(l)
        out[lab] = out.get(lab, 0j) + c
    return out


def alpha(psi: Embedding) -> MorphismAction:
    """The algebra map of a validated embedding."""
    if not psi.validated:
        raise ValidationMissing("validate_embedding must run before alpha")
    return MorphismAction(psi, label_space(psi.source, psi.source_region),
                          label_space(psi.target))


def _place_rows(space: LabelSpace, tgt: Spacetime2D, l: WeylLabel,
                kx: int) -> tuple[np.ndarray, np.ndarray]:
    """Zero-extend label rows onto the full target surface, shifted by kx
    cells; only the nonzero column span of the data has to fit."""
    r0 = np.zeros(tgt.n_x)
    r1 = np.zeros(tgt.n_x)
    nz = np.flatnonzero((l.row0 != 0.0) | (l.row1 != 0.0))
    if nz.size == 0:
        return r0, r1
    sel = slice(int(nz[0]), int(nz[-1]) + 1)
    cols = np.arange(space.col_lo + kx + int(nz[0]),
                     space.col_lo + kx + int(nz[-1]) + 1)
    if tgt.kind is SpacetimeKind.CYLINDER:
        cols = cols % tgt.n_x
    else:
        cols = cols - tgt.ix0
        if cols.min() < 0 or cols.max() >= tgt.n_x:
            raise WindowTooSmall("translated label data leave the target window")
    r0[cols] = l.row0[sel]
    r1[cols] = l.row1[sel]
    return r0, r1


def _evolve_rows_to(M: Spacetime2D, row0: np.ndarray, row1: np.ndarray,
                    anchor: int, want: int) -> tuple[np.ndarray, np.ndarray]:
    """Evolve homogeneous rows at (anchor, anchor+1) to (want, want+1)."""
    if want == anchor:
        return row0, row1
    lo = min(anchor, want)
    hi = max(anchor + 1, want + 1)
    _check_spread(M, row0, row1, anchor, lo, hi)
    n_rows = hi - lo + 1
    u = np.zeros((n_rows, M.n_x))
    a = anchor - lo
    u[a] = row0
    u[a + 1] = row1
    from ._core import leapfrog_fill

    periodic = M.kind is SpacetimeKind.CYLINDER
    if a + 2 <= n_rows - 1:
        leapfrog_fill(u[a:], None, M.spacing, M.mass, periodic, reverse=False)
    if a >= 1:
        leapfrog_fill(u[: a + 2], None, M.spacing, M.mass, periodic, reverse=True)
    w = want - lo
    return u[w], u[w + 1]


def _check_spread(M: Spacetime2D, row0, row1, anchor: int, lo: int, hi: int) -> None:
    if M.kind is SpacetimeKind.CYLINDER:
        return
    nz = np.flatnonzero((row0 != 0.0) | (row1 != 0.0))
    if nz.size == 0:
        return
    d = max(anchor - lo, hi - (anchor + 1))
    if nz[0] - d < 1 or nz[-1] + d > M.n_x - 2:
        raise WindowTooSmall("evolved data would touch the spatial window edge")


def _transport_translation(psi: Embedding, src: LabelSpace, tgt_space: LabelSpace,
                           l: WeylLabel) -> WeylLabel:
    kt, kx = psi.shift_cells()
    tgt = psi.target
    r0, r1 = _place_rows(src, tgt, l, kx)
    anchor_tgt = src.anchor + kt
    r0, r1 = _evolve_rows_to(tgt, r0, r1, anchor_tgt, tgt_space.anchor)
    return tgt_space.canonical(r0, r1)


def _transport_boost(psi: Embedding, src: LabelSpace, tgt_space: LabelSpace,
                     l: WeylLabel) -> WeylLabel:
    """Resample the reconstructed solution along the boosted reference surface.

    The preimage of the target surface is a spacelike line, so it exits
    the causal shadow of the (compact) label data; columns outside the
    shadow carry exact zeros and only the shadow portion of the strip is
    reconstructed.
    """
    M = psi.source
    tgt = psi.target
    h = M.spacing
    ch, sh = math.cosh(psi.rapidity), math.sinh(psi.rapidity)

    nz = np.flatnonzero((l.row0 != 0.0) | (l.row1 != 0.0))
    if nz.size == 0:
        return tgt_space.zero()
    xa = (src.col_lo + int(nz[0])) * h
    xb = (src.col_lo + int(nz[-1])) * h

    xs_t = tgt.positions()
    # preimages of the target rows t' in {0, h}: t = (t'-bt) ch - (x'-bx) sh
    pre = []
    for tp in (0.0, h):
        pre_t = (tp - psi.shift_t) * ch - (xs_t - psi.shift_x) * sh
        pre_x = -(tp - psi.shift_t) * sh + (xs_t - psi.shift_x) * ch
        gap = np.maximum(0.0, np.maximum(xa - pre_x, pre_x - xb))
        needed = gap <= np.abs(pre_t) + (_STRIP_PAD + 2) * h
        pre.append((pre_t, pre_x, needed))
    if not any(p[2].any() for p in pre):
        return tgt_space.zero()
    t_used = np.concatenate([p[0][p[2]] for p in pre if p[2].any()])
    lo = math.floor(t_used.min() / h) - _STRIP_PAD
    hi = math.ceil(t_used.max() / h) + _STRIP_PAD
    lo = min(lo, src.anchor)
    hi = max(hi, src.anchor + 1)
    if not (M.it0 <= lo and hi <= M.it1):
        raise WindowTooSmall("boost strip leaves the source time window")

    r0 = np.zeros(M.n_x)
    r1 = np.zeros(M.n_x)
    cols = src.window_cols()
    r0[cols] = l.row0
    r1[cols] = l.row1
    _check_spread(M, r0, r1, src.anchor, lo, hi)
    n_rows = hi - lo + 1
    u = np.zeros((n_rows, M.n_x))
    a = src.anchor - lo
    u[a] = r0
    u[a + 1] = r1
    from ._core import leapfrog_fill

    if a + 2 <= n_rows - 1:
        leapfrog_fill(u[a:], None, h, M.mass, False, reverse=False)
    if a >= 1:
        leapfrog_fill(u[: a + 2], None, h, M.mass, False, reverse=True)

    rows = []
    for pre_t, pre_x, needed in pre:
        row = np.zeros(tgt.n_x)
        if needed.any():
            ci = pre_t[needed] / h - lo
            cj = pre_x[needed] / h - M.ix0
            row[needed] = map_coordinates(u, [ci, cj], order=3,
                                          mode="grid-constant", cval=0.0)
        rows.append(row)
    return tgt_space.canonical(rows[0], rows[1])


# --------------------------------------------------------------------------
# axiom checks


def check_causality(M: Spacetime2D, O1: Region, O2: Region, n_samples: int,
                    rng: np.random.Generator, tolerance: float = 1e-10,
                    amp_range: tuple[float, float] = (0.5, 1.5)) -> Report:
    """Commutators of generators localized in spacelike-separated regions.

    The precondition (every node pair across O1 x O2 spacelike) is checked
    first and raises NotCausallySeparated if violated: that signals a bad
    test setup, not a causality failure.
    """
    if not regions_spacelike(O1, O2):
        raise NotCausallySeparated("regions are not spacelike separated")
    A = algebra_of(M)
    worst = 0.0
    for _ in range(n_samples):
        f = random_bump_in_cone(M, O1, rng, amp_range)
        g = random_bump_in_cone(M, O2, rng, amp_range)
        a, b = A.generator(f), A.generator(g)
        dev = max_coeff_distance(multiply(a, b), multiply(b, a))
        worst = max(worst, dev)
    return Report.from_deviation(
        "causality",
        {"spacetime": M.to_json(), "O1": O1.to_json(), "O2": O2.to_json()},
        n_samples, worst, tolerance)


def check_time_slice(M: Spacetime2D, slab: tuple[float, float] | Region,
                     n_samples: int, rng: np.random.Generator,
                     tolerance: float = 1e-9) -> Report:
    """Every global generator has an equal-label twin supported in the slab."""
    if isinstance(slab, Region):
        if not isinstance(slab.shape, TimeSlab):
            raise TypeError("the time-slice check needs a full-width time slab")
        t_lo, t_hi = slab.shape.t_lo, slab.shape.t_hi
    else:
        t_lo, t_hi = slab
    if not (t_lo < 0.0 < t_hi):
        raise ValueError("slab must contain the reference Cauchy surface t = 0")
    sp = label_space(M)
    h = M.spacing
    n1, n2 = round(t_lo / h), round(t_hi / h)
    worst = 0.0
    for _ in range(n_samples):
        f = random_global_bump(M, rng)
        f2 = slab_compress(f, t_lo, t_hi)
        lo, hi = f2.support_rows()
        if np.any(f2.values != 0.0) and (lo < n1 or hi > n2):
            raise AssertionError("slab_compress produced support outside the slab")
        dev = sp.distance(sp.label_of(f, intern=False), sp.label_of(f2, intern=False))
        worst = max(worst, dev)
    return Report.from_deviation(
        "time_slice", {"spacetime": M.to_json(), "slab": [t_lo, t_hi]},
        n_samples, worst, tolerance)


def check_covariance(M: Spacetime2D, motion: Embedding, regions: list[Region],
                     n_samples: int, rng: np.random.Generator,
                     tolerance: float,
                     amp_range: tuple[float, float] = (0.5, 1.5)) -> Report:
    """alpha_kappa maps generators of A(O) to generators of A(kappa O).

    ``motion`` carries the affine data of an isometry of M; per region it
    is restricted to a region-sourced embedding (so the image stays inside
    the window) and validated.  Label transport is then compared against
    independent recomputation (pushforward of the test function, then a
    fresh solve).  Supports are checked against the image region, exactly
    for grid translations and up to the spline footprint for boosts.
    """
    if motion.source != M or motion.target != M:
        raise DomainMismatch("covariance checks need an automorphism-type embedding")
    A = algebra_of(M)
    worst = 0.0
    count = 0
    for O in regions:
        kappa = validate_embedding(replace(motion, source_region=O, validated=False))
        act = alpha(kappa)
        patch = algebra_of(M, O)
        img_mask = _image_region_mask(kappa, O)
        supp_tol = 0.0 if kappa.is_translation else 1e-9
        for _ in range(n_samples):
            f = random_bump_in_cone(M, O, rng, amp_range)
            fk = pushforward(kappa, f)
            if np.any(fk.support_mask(supp_tol) & ~img_mask):
                raise AssertionError("pushforward support leaves the image region")
            lhs = act(patch.generator(f))
            rhs = A.generator(fk)
            (l1, _), = lhs.terms
            (l2, _), = rhs.terms
            worst = max(worst, A.space.distance(l1, l2))
            count += 1
    return Report.from_deviation(
        "covariance",
        {"spacetime": M.to_json(), "map": _map_params(motion),
         "regions": [O.to_json() for O in regions]},
        count, worst, tolerance)


def _map_params(e: Embedding) -> dict:
    return {"dt": e.shift_t, "dx": e.shift_x, "rapidity": e.rapidity}


def _image_region_mask(kappa: Embedding, O: Region) -> np.ndarray:
    """Mask of the image of O under kappa, padded by the spline footprint
    for boosts (exact for grid translations)."""
    M = kappa.target
    mask = O.mask()
    if kappa.is_translation:
        kt, kx = kappa.shift_cells()
        out = np.zeros_like(mask)
        rows, cols = np.nonzero(mask)
        rows = rows + kt
        if rows.min() < 0 or rows.max() >= M.n_t:
            raise WindowTooSmall("image of the region leaves the window")
        if M.kind is SpacetimeKind.CYLINDER:
            cols = (cols + kx) % M.n_x
        else:
            cols = cols + kx
            if cols.min() < 0 or cols.max() >= M.n_x:
                raise WindowTooSmall("image of the region leaves the window")
        out[rows, cols] = True
        return out
    if not isinstance(O.shape, DoubleCone):
        raise DomainMismatch("boost covariance checks use double cones")
    h = M.spacing
    tc, xc = O.shape.center
    tc, xc = round(tc / h) * h, round(xc / h) * h
    ch, sh = math.cosh(kappa.rapidity), math.sinh(kappa.rapidity)
    T, X = np.meshgrid(M.times(), M.positions(), indexing="ij")
    t = (T - kappa.shift_t) * ch - (X - kappa.shift_x) * sh
    x = -(T - kappa.shift_t) * sh + (X - kappa.shift_x) * ch
    pad = (SPLINE_PAD + 1) * h
    return np.abs(t - tc) + np.abs(x - xc) < O.shape.radius + pad


def nested_cone_chain(M: Spacetime2D, center: tuple[float, float],
                      radii: list[float]) -> list[Region]:
    """Concentric double cones, smallest first, for isotony checks."""
    return [double_cone(M, center, r) for r in sorted(radii)]


def check_isotony(M: Spacetime2D, chain: list[Region], n_samples: int,
                  rng: np.random.Generator) -> Report:
    """Support inclusion along a nested chain: every generator admitted by
    A(O_k) is admitted by A(O_{k+1}), and the region masks nest exactly."""
    handles = [local_algebra(M, O) for O in chain]
    ok = True
    for small, big in zip(chain, chain[1:]):
        if np.any(small.mask() & ~big.mask()):
            ok = False
    count = 0
    for k, O in enumerate(chain[:-1]):
        for _ in range(n_samples):
            f = random_bump_in_cone(M, O, rng, (0.5, 1.5))
            for bigger in handles[k + 1:]:
                if not bigger.admits(f):
                    ok = False
            count += 1
    return Report("isotony", {"spacetime": M.to_json(),
                              "chain": [O.to_json() for O in chain]},
                  count, 0.0 if ok else 1.0, 0.0, ok)
