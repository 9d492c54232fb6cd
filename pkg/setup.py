"""Build the optional compiled kernels; the package still installs without them."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("ncorders._kernels._ckernels", ["src/ncorders/_kernels/_ckernels.pyx"], optional=True)],
        language_level=3,
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
