"""Build script: compiles the optional fast core when a toolchain is present.

The package is fully functional without the extension; `rleval.backends`
falls back to the numpy implementation at import time.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "rleval.backends._fastcore",
                ["src/rleval/backends/_fastcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError as exc:
    sys.stderr.write(f"rleval: building without the compiled core ({exc})\n")

setup(ext_modules=ext_modules)
