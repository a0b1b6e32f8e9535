"""Build script: compiles the optional Cython kernels.

If Cython or a C compiler is unavailable the package still installs and uses
the pure-Python fallback in ``flagdom._kernels_py``.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("FLAGDOM_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "flagdom._kernels",
                    [os.path.join("src", "flagdom", "_kernels.pyx")],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
