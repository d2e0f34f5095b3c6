"""Builds the compiled extension for the okbody package.

The library proper is plain C++; this compiles the core sources together
with the pybind11 bindings into okbody._okbody, linking against GMP.
"""

from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "okbody._okbody",
    sorted(glob("src/*.cpp")) + ["bindings/pybind_module.cpp"],
    include_dirs=["include", "vendor"],
    libraries=["gmpxx", "gmp"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
