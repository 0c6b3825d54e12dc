"""Build script for the optional compiled enumeration kernel.

The package works without the extension (a numpy fallback is selected at
import time); compilation failures therefore only cost speed, not features.
"""

import os
import sys

from setuptools import Extension, setup


def make_extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    omp = os.environ.get("DOILY_NO_OPENMP") is None
    compile_args = ["-O3"]
    link_args = []
    if omp:
        compile_args.append("-fopenmp")
        link_args.append("-fopenmp")
    ext = Extension(
        "doily.kernels._fast",
        sources=["src/doily/kernels/_fast.pyx"],
        language="c++",
        extra_compile_args=compile_args + ["-std=c++11"],
        extra_link_args=link_args,
    )
    try:
        return cythonize([ext], language_level=3)
    except Exception as exc:  # pragma: no cover - degraded build still usable
        sys.stderr.write("kernel compilation skipped: %s\n" % exc)
        return []


setup(ext_modules=make_extensions())
