# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled leapfrog stepper.

Mirrors _stepper_py.leapfrog_fill with an identical floating-point
expression tree; compiled with -ffp-contract=off so results are bitwise
equal to the numpy fallback.
"""

import numpy as np

cimport numpy as cnp


def leapfrog_fill(
    cnp.float64_t[:, ::1] u,
    object f,
    double h,
    double mass,
    bint periodic,
    bint reverse=False,
):
    cdef Py_ssize_t nt = u.shape[0]
    cdef Py_ssize_t nx = u.shape[1]
    cdef double mmhh = (mass * h) * (mass * h)
    cdef double hh = h * h
    cdef bint has_f = f is not None
    cdef cnp.float64_t[:, ::1] src
    if has_f:
        src = f
    else:
        src = u  # unused; keeps the memoryview initialized
    cdef Py_ssize_t n, j, jp, jm, step, stop
    cdef double val

    n = 1 if not reverse else nt - 2
    step = 1 if not reverse else -1
    stop = nt - 1 if not reverse else 0
    while n != stop:
        if periodic:
            for j in range(nx):
                jp = j + 1 if j + 1 < nx else 0
                jm = j - 1 if j > 0 else nx - 1
                val = (2.0 * u[n, j] - u[n - step, j]) \
                    + ((u[n, jp] - 2.0 * u[n, j]) + u[n, jm]) \
                    - mmhh * u[n, j]
                if has_f:
                    val = val + hh * src[n, j]
                u[n + step, j] = val
        else:
            u[n + step, 0] = 0.0
            u[n + step, nx - 1] = 0.0
            for j in range(1, nx - 1):
                val = (2.0 * u[n, j] - u[n - step, j]) \
                    + ((u[n, j + 1] - 2.0 * u[n, j]) + u[n, j - 1]) \
                    - mmhh * u[n, j]
                if has_f:
                    val = val + hh * src[n, j]
                u[n + step, j] = val
        n += step
