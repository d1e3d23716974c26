from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("votepower._core", ["src/votepower/_core.pyx"])],
        language_level=3,
    )
except ImportError:
    # The package is fully functional on the pure-Python kernels.
    ext_modules = []

setup(ext_modules=ext_modules)
