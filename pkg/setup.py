from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mono3sat._kernel",
                ["src/mono3sat/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython at build time: ship pure Python, the bitkernel fallback
    # is selected at import.
    ext_modules = []

setup(ext_modules=ext_modules)
