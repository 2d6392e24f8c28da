import os

from setuptools import Extension, setup

# The compiled scan kernel is optional: if the extension cannot be built
# (no C compiler, cython missing), the package falls back to the pure
# numpy kernel at import time.  Set MODELOCK_NO_EXT=1 to skip the build.

ext_modules = []
if not os.environ.get("MODELOCK_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "modelock._scankernel",
                    sources=["src/modelock/_scankernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
