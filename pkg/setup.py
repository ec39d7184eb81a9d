"""Build script: compiles the optional term-arithmetic kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing Cython or C compiler only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "morinclass._termops",
                ["src/morinclass/_termops.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
