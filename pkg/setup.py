"""Build script for the optional compiled ray-casting core.

The package works without the extension (a numpy fallback is selected at
import time), but full-size scenes render an order of magnitude faster with
it.  Build in place with:

    python setup.py build_ext --inplace

Cython and a C compiler are required only for that step.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    DIRECTIVES = {
        "language_level": "3",
        "boundscheck": False,
        "wraparound": False,
        "cdivision": True,
        "initializedcheck": False,
    }
    ext_modules = cythonize(
        [
            Extension(
                "storycaster.geometry._raycore",
                ["src/storycaster/geometry/_raycore.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                # keep scalar float arithmetic bit-identical with the numpy
                # fallback: no FMA contraction, no fast-math reassociation
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives=DIRECTIVES,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
