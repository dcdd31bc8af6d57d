"""Build script: compiles the optional fast kernels.

The compiled extension is a pure accelerator; if Cython or a C compiler is
unavailable the build continues and the package falls back to the Python
kernels at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: compiled kernels unavailable (%s); "
            "using pure-Python fallback" % exc,
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not installed; skipping compiled kernels", file=sys.stderr)
        return []
    ext = Extension(
        "shapecert._kernels_c",
        ["src/shapecert/_kernels_c.pyx"],
        # -ffp-contract=off keeps float results bit-identical to the
        # pure-Python kernels (no fused multiply-add).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
