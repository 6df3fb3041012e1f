import os

from setuptools import Extension, setup

# The compiled reconstruction kernels are optional: the package falls back to
# the numpy reference backend when the extension is missing (see
# oehweno.backends).  Set OEHWENO_NO_EXT=1 to skip building it.
ext_modules = []
_PYX = "src/oehweno/backends/_fast.pyx"
if not os.environ.get("OEHWENO_NO_EXT") and os.path.exists(_PYX):
    try:
        import numpy
        from Cython.Build import cythonize

        extra_compile_args = ["-O3", "-funroll-loops"]
        extra_link_args = []
        if not os.environ.get("OEHWENO_NO_OPENMP"):
            extra_compile_args.append("-fopenmp")
            extra_link_args.append("-fopenmp")

        ext_modules = cythonize(
            [
                Extension(
                    "oehweno.backends._fast",
                    [_PYX],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=extra_compile_args,
                    extra_link_args=extra_link_args,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
