"""Build script for the optional compiled kernel.

The alignment kernels (EM forward-backward and Viterbi over the
segmentation lattice) dominate runtime when training on a full
pronouncing dictionary, so they are compiled with Cython.  If the
extension cannot be built, the package installs anyway and falls back
to the pure-Python implementation at import time.
"""

import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "phonoblocks._kernels",
                ["src/phonoblocks/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # noqa: BLE001 - any build-chain failure means pure-Python install
    print(f"phonoblocks: compiled kernel disabled ({exc})", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
