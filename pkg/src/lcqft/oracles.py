"""Closed-form propagator kernels on the Minkowski plane, by quadrature.

These are the reference values the leapfrog solver is converged against.
For the operator d_t^2 - d_x^2 + m^2 the causal propagator acts on a
source f by

    (E f)(t, x) = 1/2 * integral over (t-s)^2 > (x-y)^2 of
                  sgn(t - s) * J0(m * sqrt((t-s)^2 - (x-y)^2)) * f(s, y)

(J0 drops out at m = 0, leaving the plain cone integral).  The quadrature
never touches the solver: sources enter as analytic callables, not grid
samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad
from scipy.special import j0


@dataclass(frozen=True)
class AnalyticBump:
    """Continuum counterpart of testfun.bump (no grid snapping)."""

    center: tuple[float, float]
    radii: tuple[float, float]
    amplitude: float

    def __call__(self, t: float, x: float) -> float:
        s = (((t - self.center[0]) / self.radii[0]) ** 2
             + ((x - self.center[1]) / self.radii[1]) ** 2)
        if s >= 1.0:
            return 0.0
        return self.amplitude * math.exp(-1.0 / (1.0 - s))

    def t_support(self) -> tuple[float, float]:
        return (self.center[0] - self.radii[0], self.center[0] + self.radii[0])

    def x_support(self) -> tuple[float, float]:
        return (self.center[1] - self.radii[1], self.center[1] + self.radii[1])


def propagator_point(mass: float, f: AnalyticBump, t: float, x: float,
                     epsabs: float = 1e-12) -> float:
    """(E f)(t, x) by adaptive quadrature over the cone slices."""
    s0, s1 = f.t_support()
    y0, y1 = f.x_support()

    def kernel(y: float, s: float) -> float:
        dt = t - s
        q = dt * dt - (x - y) * (x - y)
        if q <= 0.0:
            return 0.0
        val = f(s, y)
        if val == 0.0:
            return 0.0
        if mass != 0.0:
            val *= j0(mass * math.sqrt(q))
        return val if dt > 0 else -val

    def ylo(s: float) -> float:
        return max(y0, x - abs(t - s))

    def yhi(s: float) -> float:
        lo = ylo(s)
        return max(lo, min(y1, x + abs(t - s)))

    total = 0.0
    for lo, hi in ((s0, min(s1, t)), (max(s0, t), s1)):
        if lo < hi:
            val, _ = dblquad(kernel, lo, hi, ylo, yhi,
                             epsabs=epsabs, epsrel=1e-10)
            total += val
    return 0.5 * total


def propagator_points(mass: float, f: AnalyticBump,
                      points: list[tuple[float, float]]) -> np.ndarray:
    return np.array([propagator_point(mass, f, t, x) for t, x in points])
