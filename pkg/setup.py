"""Build script.

The package is pure Python plus one optional Cython extension holding the
hot search and elimination kernels.  If the extension cannot be built the
package still works through the pure-Python fallback in
``sdlab._kernels_py``; set SDLAB_SKIP_EXTENSION=1 to skip the build on
purpose.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SDLAB_SKIP_EXTENSION", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "sdlab._kernels_cy",
                    ["src/sdlab/_kernels_cy.pyx"],
                    optional=True,
                )
            ],
            language_level="3",
        )

setup(ext_modules=ext_modules)
