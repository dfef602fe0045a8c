import os

from setuptools import Extension, setup

# The compiled elimination kernel is optional: the package falls back to the
# pure-Python implementation in ymh._accel._elim_py when the extension is
# absent.  Set YMH_PURE=1 to skip building it altogether.
ext_modules = []
if os.environ.get("YMH_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ymh._accel._elim",
                    ["src/ymh/_accel/_elim.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
