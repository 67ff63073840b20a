"""Build script for the optional compiled kernels.

The package is pure Python plus one Cython extension with the two numerical
hot loops.  The extension is marked optional: if it fails to build or import,
the package falls back to the NumPy reference kernels at import time.
"""

import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "ghzbell._kernels._fast",
        sources=["src/ghzbell/_kernels/_fast.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
