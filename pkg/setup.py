from setuptools import setup

# The compiled kernel is optional: the build degrades to the pure-Python
# fallback in hgdet._kernels when Cython or a C compiler is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/hgdet/_kernels/_modelim.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
