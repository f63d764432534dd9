"""Build script: compiles the closure kernel extension when Cython and a C
compiler are available.  The package works without it (pure-Python fallback
selected at import), so any build failure here downgrades to a warning.
"""

import os
import sys

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("EQGEO_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("eqgeo._closure_cy", ["src/eqgeo/_closure_cy.pyx"])],
            language_level="3",
        )
    except Exception as exc:  # pragma: no cover - build-env dependent
        sys.stderr.write(f"eqgeo: skipping compiled kernel ({exc})\n")
        ext_modules = []

setup(ext_modules=ext_modules)
