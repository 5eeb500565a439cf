"""Build hook for the optional compiled term kernel.

The package works without it: ``dholt.kernel`` falls back to the
pure-Python implementation when the extension is missing.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(["src/dholt/_kernel_c.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
