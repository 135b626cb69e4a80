"""Build script: compiles the hot comparator kernels when Cython and a C
toolchain are available.  The extension is optional; without it the package
falls back to the NumPy kernels at import time."""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "coinknn._kernels._native",
                ["src/coinknn/_kernels/_native.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
