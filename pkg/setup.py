import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the compiled kernel when a toolchain is available.

    The package is fully functional without it (pure-Python kernels are
    selected at import time), so a failed compile only costs speed.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:
            _warn_skipped(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            _warn_skipped(exc)


def _warn_skipped(exc):
    warnings.warn(f"compiled kernel not built ({exc}); using the pure-Python fallback")


def extensions():
    if os.environ.get("SAWKIT_NO_EXTENSION"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("sawkit._kernels._native", ["src/sawkit/_kernels/_native.pyx"])
    return cythonize([ext], language_level="3")


setup(cmdclass={"build_ext": OptionalBuildExt}, ext_modules=extensions())
