from setuptools import Extension, setup

# The compiled evaluation kernel is optional: without Cython (or without a C
# compiler) the package falls back to the pure-Python interpreter at import.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("cartan235._evalcore", ["src/cartan235/_evalcore.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
