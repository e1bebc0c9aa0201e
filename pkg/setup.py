import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LPZEROS_SKIP_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "lpzeros._kernels._lp_core",
                    ["src/lpzeros/_kernels/_lp_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no cython toolchain: install pure python, runtime falls back
        ext_modules = []

setup(ext_modules=ext_modules)
