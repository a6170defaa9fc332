"""Build script: compiles the optional hit-search extension when Cython is
available, and degrades to a pure-Python install when it is not."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("compalign._hitkern_c", ["src/compalign/_hitkern_c.pyx"])],
        language_level=3,
    )
except ImportError:  # pure-Python install
    ext_modules = []

setup(ext_modules=ext_modules)
