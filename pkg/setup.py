import os

from setuptools import Extension, setup

# The compiled ring kernels are optional: without Cython (or with
# HSCIRCLES_NO_EXT=1) the package installs pure-Python only and
# hscircles._kernels falls back at import time.
ext_modules = []
if os.environ.get("HSCIRCLES_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "hscircles._kernels._ring_c",
                    ["src/hscircles/_kernels/_ring_c.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
