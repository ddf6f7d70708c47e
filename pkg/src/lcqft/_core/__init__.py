"""Backend selection for the hot leapfrog kernel.

The compiled Cython stepper is preferred; the numpy twin is used when the
extension is unavailable or when LCQFT_DISABLE_EXTENSION is set.  Both
produce bitwise-identical arrays (see benchmarks/bench_leapfrog.py).
"""

from __future__ import annotations

import os

from . import _stepper_py

if os.environ.get("LCQFT_DISABLE_EXTENSION"):
    _impl = _stepper_py
    _BACKEND = "python"
else:
    try:
        from . import _stepper as _impl  # type: ignore[no-redef]

        _BACKEND = "cython"
    except ImportError:
        _impl = _stepper_py
        _BACKEND = "python"

leapfrog_fill = _impl.leapfrog_fill


def backend_name() -> str:
    """Name of the stepper backend in use: 'cython' or 'python'."""
    return _BACKEND
