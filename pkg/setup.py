import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# twin at import time.  Set AISLEKIT_NO_EXT=1 to skip the build entirely.
ext_modules = []
if not os.environ.get("AISLEKIT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("aislekit._kernel_cy", ["src/aislekit/_kernel_cy.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
