import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FOCKFORGE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # build the pure-Python package only
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("fockforge._kernels", ["src/fockforge/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
