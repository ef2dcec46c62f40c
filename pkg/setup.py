"""Build hook for the optional compiled kernel.

The package is pure Python plus one optional Cython extension,
jetlaw._kernel._speedups.  If Cython is unavailable or the extension
fails to build, the install still succeeds and jetlaw falls back to the
pure-Python kernel at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "jetlaw._kernel._speedups",
                ["src/jetlaw/_kernel/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules, package_dir={"": "src"})
