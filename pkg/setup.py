"""Build hook: compile the optional kernel extension when Cython is around.

The package works without the extension (a pure Python engine is selected at
import time), so any compile problem just means the slower fallback is used.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ostplan/engine/_kernels.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
except Exception as exc:  # pragma: no cover - environment dependent
    print("ostplan: skipping compiled kernels (%s)" % exc)

setup(ext_modules=ext_modules)
