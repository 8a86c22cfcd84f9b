from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/scband/_kernels/_ckern.pyx", language_level=3
    )
except ImportError:
    # Pure-python fallback kernels are selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
