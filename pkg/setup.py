"""Build script: compiles the optional directed-rounding accelerator.

The extension is a strict performance twin of ``tangency._pyops``; if the
toolchain is unavailable the install falls back to the pure-Python kernels
(selected at import in ``tangency.kernels``).
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing: pure-Python fallback
            print(f"warning: skipping accelerator build ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})")


ext_modules = []
if not os.environ.get("TANGENCY_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("tangency._fastops", ["src/tangency/_fastops.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
