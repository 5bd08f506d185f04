import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: the package falls back to pure Python
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("tqforms._kernels", ["src/tqforms/_kernels.pyx"],
                   include_dirs=[numpy.get_include()],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
