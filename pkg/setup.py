"""Build hook for the optional compiled congruence-closure kernel.

The package works without the extension: closure.py falls back to the
pure-Python kernel when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "modelbridge._closure_c",
                ["src/modelbridge/_closure_c.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
