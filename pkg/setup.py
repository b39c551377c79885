"""Builds the optional compiled oracle kernels; the package works without them."""
from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("opengames.kernels._ckernels", ["src/opengames/kernels/_ckernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
