"""Build script for the optional compiled kernel core.

The package is fully functional without the extension; fplab._kernels falls
back to the numpy/big-int backend when the import fails, so a missing compiler
only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "fplab._kernels._bitcore",
                ["src/fplab/_kernels/_bitcore.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
