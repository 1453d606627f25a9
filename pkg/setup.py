"""Build script: compiles the hot-loop kernels as a C extension when possible.

The package works without the extension (a pure-Python implementation of the
same kernels is selected at import time), so a failed compile downgrades to a
warning instead of aborting the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    import os

    if not os.path.exists("src/paretolab/_kernels.pyx"):
        return []

    import numpy
    from Cython.Build import cythonize

    from setuptools import Extension

    ext = Extension(
        "paretolab._kernels",
        ["src/paretolab/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
        language="c",
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )


class optional_build_ext(build_ext):
    """Make the extension best-effort: fall back to pure Python on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: building paretolab._kernels failed ({exc}); "
                  "falling back to the pure-Python kernels", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to the pure-Python kernels", file=sys.stderr)


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
