"""Build script for the compiled kernel extension.

The extension is optional at runtime: eitkit falls back to pure
numpy/Python kernels when the module is missing.  Float expressions in
the kernels must match the fallback bit-for-bit, so FP contraction is
disabled (no FMA fusing of a*b+c).
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "eitkit._kernels",
        ["src/eitkit/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
