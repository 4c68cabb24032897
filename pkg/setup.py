"""Builds the optional compiled kernel extension.

The package works without it (a NumPy fallback is selected at import time),
so the extension is skipped rather than failing the install when Cython is
unavailable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "evolab._speedups",
                ["src/evolab/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
