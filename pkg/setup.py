"""Build the optional Cython kernels; the package falls back to numpy without them."""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ASYMTOP_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "asymtop._kernels",
                    ["src/asymtop/_kernels.pyx"],
                    # no -ffast-math: the Sturm count relies on IEEE semantics
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
