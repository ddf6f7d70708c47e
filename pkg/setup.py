"""Build script for the compiled leapfrog kernel.

The extension is optional at runtime: lcqft falls back to the pure-numpy
stepper if the compiled module is missing (see lcqft._core).  Compilation
is attempted unconditionally; -ffp-contract=off keeps the compiled kernel
bitwise identical to the numpy fallback (no FMA contraction).
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext = Extension(
    "lcqft._core._stepper",
    ["src/lcqft/_core/_stepper.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O2", "-ffp-contract=off"],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)

setup(ext_modules=cythonize([ext], language_level=3))
