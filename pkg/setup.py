"""Build hook for the optional compiled kernels.

The package works without the extension; when Cython and a C compiler
are present the hot cube-search loops get a native implementation,
selected at import time.  Build failures are therefore non-fatal.
"""

import os

from setuptools import Extension, setup

PYX = os.path.join("src", "tildeiso", "_kernels.pyx")

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = [] if not os.path.exists(PYX) else cythonize(
        [
            Extension(
                "tildeiso._kernels",
                [PYX],
                extra_compile_args=["-O3"],
                optional=True,
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
