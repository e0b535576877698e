"""Build script: compiles the optional Monte Carlo kernel extension.

The package works without the extension (pure numpy fallback is selected at
import time); building it just makes the photon-statistics simulations faster.
A failed compile therefore degrades to a pure-python install instead of
aborting.
"""

from setuptools import setup
from setuptools.extension import Extension


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "dotcav.photonstats._kernels",
        ["src/dotcav/photonstats/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=_extensions())
