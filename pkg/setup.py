import os

from setuptools import setup

ext_modules = []
if os.environ.get("ISOMON_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("isomon.kernels._ckernels", ["src/isomon/kernels/_ckernels.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
