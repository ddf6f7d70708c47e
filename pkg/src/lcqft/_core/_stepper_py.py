"""Pure-numpy leapfrog stepper, the fallback twin of the Cython kernel.

The recursion at unit CFL ratio (dt = dx = h) is

    u[n+1,j] = 2 u[n,j] - u[n-1,j] + (u[n,j+1] - 2 u[n,j] + u[n,j-1])
               - (m h)^2 u[n,j] + h^2 f[n,j]

with Dirichlet zeros on the spatial edges for plane grids and periodic
wraparound for cylinder grids.  The compiled kernel evaluates the exact
same expression tree, so both backends produce bitwise-identical output.
"""

from __future__ import annotations

import numpy as np


def leapfrog_fill(
    u: np.ndarray,
    f: np.ndarray | None,
    h: float,
    mass: float,
    periodic: bool,
    reverse: bool = False,
) -> None:
    """Fill the rows of ``u`` in place by the leapfrog recursion.

    Rows 0 and 1 (or the last two rows when ``reverse`` is true) must be
    preset; the remaining rows are overwritten.  ``f`` is an optional
    source array of the same shape as ``u``.
    """
    nt = u.shape[0]
    mmhh = (mass * h) * (mass * h)
    hh = h * h
    steps = range(1, nt - 1) if not reverse else range(nt - 2, 0, -1)
    sign = 1 if not reverse else -1
    for n in steps:
        row = u[n]
        if periodic:
            lap = np.roll(row, -1) - 2.0 * row + np.roll(row, 1)
            nxt = 2.0 * row - u[n - sign] + lap - mmhh * row
            if f is not None:
                nxt = nxt + hh * f[n]
        else:
            lap = np.zeros_like(row)
            lap[1:-1] = row[2:] - 2.0 * row[1:-1] + row[:-2]
            nxt = 2.0 * row - u[n - sign] + lap - mmhh * row
            if f is not None:
                nxt = nxt + hh * f[n]
            nxt[0] = 0.0
            nxt[-1] = 0.0
        u[n + sign] = nxt
