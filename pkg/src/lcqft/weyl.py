"""Weyl *-algebra over the symplectic space of solutions.

Labels are canonical Cauchy data of E f at the reference surface of their
object, stored internally as two consecutive solution rows (t = 0 and
t = h for full windows, the waist rows for double-cone patches).  The
two-row form makes translation transport a pure index operation; the
(phi, pi) form required for comparisons and serialization is derived on
demand.

Labels are interned per object: creation snaps any label within relative
L2 distance 1e-9 of a registered one onto it, which makes label equality
decidable and lets elements use labels as dictionary keys.

Generators satisfy  W(l1) W(l2) = exp(-i sigma(l1, l2) / 2) W(l1 + l2)
with sigma evaluated on Cauchy data, and  W(l)* = W(-l).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, DomainMismatch, StateUnavailable
from .greens import causal_propagator
from .spacetime import DoubleCone, Region, Spacetime2D, SpacetimeKind
from .testfun import TestFunction

#: Relative L2 snapping tolerance for label identification.
LABEL_TOLERANCE = 1e-9


@dataclass(eq=False)
class WeylLabel:
    """Interned canonical label; identity is equality within its space."""

    space: "LabelSpace"
    row0: np.ndarray
    row1: np.ndarray
    index: int

    def __post_init__(self):
        self.row0.flags.writeable = False
        self.row1.flags.writeable = False
        self._data = None
        self._norm = None

    def data(self) -> tuple[np.ndarray, np.ndarray]:
        """Canonical (phi, pi) at the reference surface."""
        if self._data is None:
            sp = self.space
            h = sp.ambient.spacing
            row_m1 = sp._backstep(self.row0, self.row1)
            self._data = (self.row0, (self.row1 - row_m1) / (2.0 * h))
        return self._data

    def norm(self) -> float:
        if self._norm is None:
            phi, pi = self.data()
            self._norm = float(np.sqrt(self.space.ambient.spacing
                                       * (np.sum(phi * phi) + np.sum(pi * pi))))
        return self._norm

    def neg(self) -> "WeylLabel":
        return self.space.canonical(-self.row0, -self.row1)

    def content_hash(self) -> str:
        phi, pi = self.data()
        dig = hashlib.sha256()
        dig.update(phi.tobytes())
        dig.update(pi.tobytes())
        return dig.hexdigest()[:16]

    def to_json(self) -> dict:
        phi, pi = self.data()
        return {"label_hash": self.content_hash(),
                "phi": [float(v) for v in phi], "pi": [float(v) for v in pi]}


class LabelSpace:
    """Registry of canonical labels for one spacetime object.

    For a full window the data rows span the whole spatial grid; for a
    double-cone patch they span the cone's waist columns (the solution of
    any source inside the cone vanishes outside the waist at waist time,
    exactly, by the unit-cone stencil).
    """

    def __init__(self, ambient: Spacetime2D, region: Region | None = None):
        self.ambient = ambient
        self.region = region
        if region is None:
            self.anchor = 0
            self.col_lo = ambient.ix0
            self.col_hi = ambient.ix1
            self.periodic = ambient.kind is SpacetimeKind.CYLINDER
            if not (ambient.it0 <= 0 and 1 <= ambient.it1):
                raise ValueError("window must contain the rows t = 0 and t = h")
        else:
            if not isinstance(region.shape, DoubleCone):
                raise DomainMismatch(
                    "only double-cone patches carry an intrinsic label space")
            h = ambient.spacing
            tc, xc = region.shape.center
            self.anchor = round(tc / h)
            mask = region.mask()
            row = mask[self.anchor - ambient.it0]
            cols = np.flatnonzero(row)
            if cols.size == 0:
                raise DomainMismatch("empty region has no label space")
            if ambient.kind is SpacetimeKind.CYLINDER and row[0] and row[-1] and not row.all():
                raise DomainMismatch("seam-wrapping patches are not supported")
            self.col_lo = int(cols[0]) + ambient.ix0
            self.col_hi = int(cols[-1]) + ambient.ix0
            self.periodic = False
            if not (ambient.it0 <= self.anchor and self.anchor + 1 <= ambient.it1):
                raise ValueError("patch waist rows leave the window")
        self.width = self.col_hi - self.col_lo + 1
        self._registry: list[WeylLabel] = []
        z = np.zeros(self.width)
        self._register(z, z.copy())

    # -- canonicalization ----------------------------------------------------

    def _register(self, row0: np.ndarray, row1: np.ndarray) -> WeylLabel:
        lab = WeylLabel(self, np.ascontiguousarray(row0),
                        np.ascontiguousarray(row1), len(self._registry))
        self._registry.append(lab)
        return lab

    def candidate(self, row0: np.ndarray, row1: np.ndarray) -> WeylLabel:
        """An un-interned label (for raw distance measurements only)."""
        if row0.shape != (self.width,) or row1.shape != (self.width,):
            raise DomainMismatch("label rows have the wrong width")
        return WeylLabel(self, np.ascontiguousarray(row0.copy()),
                         np.ascontiguousarray(row1.copy()), -1)

    def canonical(self, row0: np.ndarray, row1: np.ndarray) -> WeylLabel:
        """Intern two solution rows, snapping onto a registered label."""
        cand = self.candidate(row0, row1)
        for lab in self._registry:
            if self._distance(cand, lab) <= LABEL_TOLERANCE:
                return lab
        cand.index = len(self._registry)
        self._registry.append(cand)
        return cand

    def zero(self) -> WeylLabel:
        return self._registry[0]

    def _distance(self, a: WeylLabel, b: WeylLabel) -> float:
        na, nb = a.norm(), b.norm()
        scale = max(1.0, na, nb)
        if abs(na - nb) > 2.0 * LABEL_TOLERANCE * scale:
            return abs(na - nb) / scale
        pa, qa = a.data()
        pb, qb = b.data()
        d = np.sqrt(self.ambient.spacing
                    * (np.sum((pa - pb) ** 2) + np.sum((qa - qb) ** 2)))
        return float(d / scale)

    def distance(self, a: WeylLabel, b: WeylLabel) -> float:
        """Relative L2 distance between canonical data of two labels."""
        if a.space is not self or b.space is not self:
            raise AmbientMismatch("labels from a different space")
        return self._distance(a, b)

    # -- label arithmetic ----------------------------------------------------

    def add(self, a: WeylLabel, b: WeylLabel) -> WeylLabel:
        return self.canonical(a.row0 + b.row0, a.row1 + b.row1)

    def scale(self, c: float, a: WeylLabel) -> WeylLabel:
        return self.canonical(c * a.row0, c * a.row1)

    def sigma(self, a: WeylLabel, b: WeylLabel) -> float:
        """Symplectic pairing h * sum(phi_a pi_b - pi_a phi_b)."""
        pa, qa = a.data()
        pb, qb = b.data()
        return float(self.ambient.spacing * np.sum(pa * qb - qa * pb))

    # -- solution helpers ----------------------------------------------------

    def _lap(self, row: np.ndarray) -> np.ndarray:
        if self.periodic:
            return np.roll(row, -1) - 2.0 * row + np.roll(row, 1)
        out = np.zeros_like(row)
        out[1:-1] = row[2:] - 2.0 * row[1:-1] + row[:-2]
        return out

    def _backstep(self, row0: np.ndarray, row1: np.ndarray) -> np.ndarray:
        """Homogeneous leapfrog row at anchor - 1 from rows (anchor, anchor+1)."""
        h = self.ambient.spacing
        mmhh = (self.ambient.mass * h) * (self.ambient.mass * h)
        return 2.0 * row0 - row1 + self._lap(row0) - mmhh * row0

    def rows_from_data(self, phi: np.ndarray, pi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Invert the centered-difference convention: data -> two rows."""
        h = self.ambient.spacing
        mmhh = (self.ambient.mass * h) * (self.ambient.mass * h)
        half = phi + 0.5 * (self._lap(phi) - mmhh * phi)
        return phi, half + h * pi

    def window_cols(self) -> np.ndarray:
        """Window column positions of the label columns."""
        cols = np.arange(self.col_lo, self.col_hi + 1)
        if self.ambient.kind is SpacetimeKind.CYLINDER:
            return cols % self.ambient.n_x
        return cols - self.ambient.ix0

    def label_of(self, f: TestFunction, intern: bool = True) -> WeylLabel:
        """Label of E f (solve, restrict to the label columns).

        With intern=False the raw data is returned without snapping, for
        deviation measurements below the identification tolerance.
        """
        if f.ambient != self.ambient:
            raise AmbientMismatch("test function lives on a different spacetime")
        if self.region is not None and np.any(f.support_mask() & ~self.region.mask()):
            raise DomainMismatch("test function is not supported in the patch")
        u = causal_propagator(f)
        cols = self.window_cols()
        rows = (u.row(self.anchor)[cols], u.row(self.anchor + 1)[cols])
        return self.canonical(*rows) if intern else self.candidate(*rows)


_SPACES: dict = {}


def label_space(M: Spacetime2D, region: Region | None = None) -> LabelSpace:
    """The shared label space of a spacetime window or double-cone patch."""
    key = (M, region)
    if key not in _SPACES:
        _SPACES[key] = LabelSpace(M, region)
    return _SPACES[key]


# --------------------------------------------------------------------------
# algebra elements


@dataclass(frozen=True)
class WeylElement:
    """Finite complex combination of Weyl generators over one label space."""

    space: LabelSpace
    terms: tuple

    @staticmethod
    def make(space: LabelSpace, coeffs: dict) -> "WeylElement":
        items = tuple(sorted(((l, complex(c)) for l, c in coeffs.items() if c != 0),
                             key=lambda t: t[0].index))
        return WeylElement(space, items)

    def coefficient(self, label: WeylLabel) -> complex:
        for l, c in self.terms:
            if l is label:
                return c
        return 0j

    def n_terms(self) -> int:
        return len(self.terms)

    def __add__(self, other: "WeylElement") -> "WeylElement":
        _same_space(self, other)
        acc = {l: c for l, c in self.terms}
        for l, c in other.terms:
            acc[l] = acc.get(l, 0j) + c
        return WeylElement.make(self.space, acc)

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + other.scaled(-1.0)

    def scaled(self, c: complex) -> "WeylElement":
        return WeylElement.make(self.space, {l: c * v for l, v in self.terms})

    def __rmul__(self, c: complex) -> "WeylElement":
        return self.scaled(c)

    def max_coeff(self) -> float:
        return max((abs(c) for _, c in self.terms), default=0.0)

    def is_unit(self, tol: float = 0.0) -> bool:
        u = unit(self.space)
        return max_coeff_distance(self, u) <= tol

    def to_json(self) -> dict:
        return {"terms": [
            {"label_hash": l.content_hash(), "coeff_re": c.real, "coeff_im": c.imag}
            for l, c in self.terms]}


def _same_space(a: WeylElement, b: WeylElement) -> None:
    if a.space is not b.space:
        raise AmbientMismatch("elements live over different label spaces")


def unit(space: LabelSpace) -> WeylElement:
    return WeylElement.make(space, {space.zero(): 1.0 + 0j})


def from_label(space: LabelSpace, label: WeylLabel) -> WeylElement:
    return WeylElement.make(space, {label: 1.0 + 0j})


def generator(M: Spacetime2D, f: TestFunction) -> WeylElement:
    """W(E f): the exponentiated field smeared with f."""
    sp = label_space(M)
    return from_label(sp, sp.label_of(f))


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    """Bilinear extension of W(l1)W(l2) = exp(-i sigma(l1,l2)/2) W(l1+l2)."""
    _same_space(a, b)
    sp = a.space
    acc: dict = {}
    for l1, c1 in a.terms:
        for l2, c2 in b.terms:
            phase = np.exp(-0.5j * sp.sigma(l1, l2))
            lab = sp.add(l1, l2)
            acc[lab] = acc.get(lab, 0j) + c1 * c2 * phase
    return WeylElement.make(sp, acc)


def adjoint(a: WeylElement) -> WeylElement:
    """Conjugate-linear extension of W(l)* = W(-l)."""
    return WeylElement.make(a.space, {l.neg(): np.conj(c) for l, c in a.terms})


def inverse(a: WeylElement) -> WeylElement:
    """Inverse of a single-term element c W(l): (1/c) W(-l)."""
    if len(a.terms) != 1:
        raise ValueError("inverse is implemented for single-term elements only")
    (l, c), = a.terms
    return WeylElement.make(a.space, {l.neg(): 1.0 / c})


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return multiply(a, b) - multiply(b, a)


def max_coeff_distance(a: WeylElement, b: WeylElement) -> float:
    """Largest coefficient magnitude of a - b (term-wise over the union)."""
    return (a - b).max_coeff()


# --------------------------------------------------------------------------
# quasi-free states


@dataclass(frozen=True)
class QuasiFreeState:
    """Mode-sum vacuum on a massive cylinder.

    The covariance is mu(l1, l2) = (1/2)[<phi1, Omega phi2> + <pi1,
    Omega^{-1} pi2>] with Omega = sqrt(m^2 - d_x^2) acting through the
    discrete modes k_n = 2 pi n / L, omega_n = sqrt(m^2 + k_n^2), and
    expectation values extend  omega(W(l)) = exp(-mu(l, l)/2)  linearly.
    """

    space: LabelSpace

    def covariance(self, a: WeylLabel, b: WeylLabel) -> float:
        sp = self.space
        M = sp.ambient
        pa, qa = a.data()
        pb, qb = b.data()
        n = M.n_x
        k = 2.0 * np.pi * np.fft.fftfreq(n, d=M.spacing)
        om = np.sqrt(M.mass**2 + k**2)
        fa, fb = np.fft.fft(pa), np.fft.fft(pb)
        ga, gb = np.fft.fft(qa), np.fft.fft(qb)
        val = np.sum(om * np.conj(fa) * fb + np.conj(ga) * gb / om).real
        return float(0.5 * M.spacing * val / n)

    def expectation(self, a: WeylElement) -> complex:
        if a.space is not self.space:
            raise AmbientMismatch("element lives over a different label space")
        out = 0j
        for l, c in a.terms:
            out += c * np.exp(-0.5 * self.covariance(l, l))
        return complex(out)


def cylinder_vacuum(M: Spacetime2D) -> QuasiFreeState:
    """The quasi-free vacuum state; cylinders with m > 0 only."""
    if M.kind is not SpacetimeKind.CYLINDER:
        raise StateUnavailable("no preferred vacuum on the Minkowski window")
    if M.mass <= 0:
        raise StateUnavailable("the massless cylinder zero mode obstructs the vacuum")
    return QuasiFreeState(label_space(M))
