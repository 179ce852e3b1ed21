from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("waringeq._ckernels", ["src/waringeq/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # no Cython: ship the pure-Python kernels only
    extensions = []

setup(ext_modules=extensions)
