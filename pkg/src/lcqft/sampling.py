"""Seeded random test-function factories used by the axiom checks."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainMismatch
from .spacetime import DoubleCone, Region, Spacetime2D, SpacetimeKind
from .testfun import TestFunction, bump


def random_bump_in_cone(M: Spacetime2D, O: Region, rng: np.random.Generator,
                        amp_range: tuple[float, float] = (0.5, 1.5),
                        radius_frac: tuple[float, float] = (0.25, 0.4)) -> TestFunction:
    """A random bump whose support ellipse fits strictly inside a double cone.

    The ellipse reaches L1 distance sqrt(rt^2 + rx^2) from its center, so
    radii and center offset are drawn against that budget, with a few
    cells of slack for the sample box.
    """
    if not isinstance(O.shape, DoubleCone):
        raise DomainMismatch("random localized bumps are drawn in double cones")
    h = M.spacing
    r = O.shape.radius
    eff = r - 4.0 * h
    if eff <= 0.2 * r:
        raise ValueError("cone too small for a localized bump at this spacing")
    rt = eff * rng.uniform(*radius_frac)
    rx = eff * rng.uniform(*radius_frac)
    budget = eff - math.hypot(rt, rx)
    rho = rng.uniform(0.0, 0.95 * budget)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    off_t = rho * math.cos(theta) / math.sqrt(2.0)
    off_x = rho * math.sin(theta) / math.sqrt(2.0)
    amp = rng.uniform(*amp_range) * rng.choice([-1.0, 1.0])
    center = (O.shape.center[0] + off_t, O.shape.center[1] + off_x)
    return bump(M, center, (rt, rx), amp)


def random_global_bump(M: Spacetime2D, rng: np.random.Generator,
                       amp_range: tuple[float, float] = (0.5, 1.5),
                       radius_range: tuple[float, float] = (0.2, 0.45)) -> TestFunction:
    """A random bump anywhere in the window, leaving room for its causal
    shadow (both solver directions must fit)."""
    h = M.spacing
    rt = rng.uniform(*radius_range)
    rx = rng.uniform(*radius_range)
    tc = rng.uniform(M.t_min + rt + 3 * h, M.t_max - rt - 3 * h)
    if M.kind is SpacetimeKind.CYLINDER:
        xc = rng.uniform(0.0, M.circumference)
    else:
        span = (M.n_t - 1) * h
        lo = M.x_min + rx + span + 3 * h
        hi = M.x_max - rx - span - 3 * h
        if lo >= hi:
            raise ValueError("window too narrow for a global bump with solver margins")
        xc = rng.uniform(lo, hi)
    amp = rng.uniform(*amp_range) * rng.choice([-1.0, 1.0])
    return bump(M, (tc, xc), (rt, rx), amp)
