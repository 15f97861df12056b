from setuptools import Extension, setup

# The compiled message-passing kernel is optional: without Cython (or a C
# compiler) the package falls back to the vectorized numpy implementation.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ldpc_dsss._kernels._spa",
                ["src/ldpc_dsss/_kernels/_spa.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
