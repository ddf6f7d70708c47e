"""Backend parity: the compiled stepper and its numpy twin agree bitwise."""

import numpy as np
import pytest

from lcqft._core import _stepper_py, backend_name


def _compiled():
    try:
        from lcqft._core import _stepper

        return _stepper
    except ImportError:
        return None


requires_extension = pytest.mark.skipif(
    _compiled() is None, reason="compiled stepper not built")


def test_backend_name_reports():
    assert backend_name() in ("cython", "python")


@requires_extension
@pytest.mark.parametrize("periodic", [False, True])
@pytest.mark.parametrize("reverse", [False, True])
@pytest.mark.parametrize("with_source", [False, True])
def test_bitwise_parity(periodic, reverse, with_source):
    rng = np.random.default_rng(42)
    nt, nx = 40, 37
    h, mass = 1 / 16, 0.9
    base = np.zeros((nt, nx))
    rows = (slice(0, 2)) if not reverse else (slice(nt - 2, nt))
    base[rows] = rng.standard_normal((2, nx))
    if not periodic:
        base[:, 0] = base[:, -1] = 0.0
    src = rng.standard_normal((nt, nx)) if with_source else None

    u_py = base.copy()
    _stepper_py.leapfrog_fill(u_py, src, h, mass, periodic, reverse)
    u_cy = base.copy()
    _compiled().leapfrog_fill(u_cy, src, h, mass, periodic, reverse)
    assert np.array_equal(u_py, u_cy)


@requires_extension
def test_parity_on_a_real_solve():
    import os
    import subprocess
    import sys

    code = (
        "import numpy as np\n"
        "from lcqft.spacetime import minkowski_plane\n"
        "from lcqft.testfun import bump\n"
        "from lcqft.greens import causal_propagator\n"
        "M = minkowski_plane(1/32, (-1.0, 1.0), (-4.0, 4.0), 1.0)\n"
        "f = bump(M, (0.0, 0.0), (0.4, 0.5), 1.0)\n"
        "u = causal_propagator(f)\n"
        "import hashlib, sys\n"
        "sys.stdout.write(hashlib.sha256(u.values.tobytes()).hexdigest())\n"
    )
    digests = {}
    for disable in ("", "1"):
        env = dict(os.environ)
        if disable:
            env["LCQFT_DISABLE_EXTENSION"] = "1"
        else:
            env.pop("LCQFT_DISABLE_EXTENSION", None)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        digests[disable] = out.stdout.strip()
    assert digests[""] == digests["1"]
