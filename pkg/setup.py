import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# backend when the extension is absent (see tyang/_kernel/__init__.py).
ext_modules = []
if os.environ.get("TYANG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "tyang._kernel._speedups",
                    ["src/tyang/_kernel/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
