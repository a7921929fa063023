"""Build script: compiles the optional search kernel extension.

The package works without the extension (a pure-Python kernel is selected
at import time), so compilation is skipped rather than fatal when Cython
or a C compiler is unavailable. Set COWPLAN_NO_EXTENSION=1 to force a
pure-Python install.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COWPLAN_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "cowplan.search._ckernel",
                    ["src/cowplan/search/_ckernel.pyx"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
