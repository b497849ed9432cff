"""Build script for the optional compiled kernel.

The package is pure Python except for ``coxforge._speedups``, a Cython
translation of the exact elimination kernels in ``coxforge._kernels_py``.
If Cython or a C compiler is unavailable the extension is skipped and the
package falls back to the Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("coxforge._speedups", ["src/coxforge/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
