"""Builds the optional compiled refinement kernel.

    python setup.py build_ext --inplace

drops synchro._cirkernel next to its pure-Python twin. The package works
unchanged without it (the pure kernel is selected at import time).
"""
from setuptools import setup

try:
    from setuptools import Extension

    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "synchro._cirkernel",
                ["src/synchro/_cirkernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
