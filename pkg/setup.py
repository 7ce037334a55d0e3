"""Builds the compiled SMACOF kernel extension when Cython is available.

The package falls back to pure numpy kernels at import time if the extension
was not built, so installation without Cython or a C compiler still works.
"""

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "jofcmatch.embedding._core",
                ["src/jofcmatch/embedding/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ]
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
