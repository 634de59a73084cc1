"""CMake-driven build of the sqg_halfplane._core extension.

The heavy lifting lives in CMakeLists.txt; this shim configures a private
build tree, compiles the pybind11 module, and drops it where setuptools
expects extension artifacts.  Build with

    pip install -e . --no-build-isolation
"""
import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str, sourcedir: str = "") -> None:
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        ext_full = Path.cwd() / self.get_ext_fullpath(ext.name)
        extdir = ext_full.parent.resolve()
        cfg = "Debug" if int(os.environ.get("DEBUG", "0")) else "Release"

        cmake_args = [
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}{os.sep}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DCMAKE_BUILD_TYPE={cfg}",
            "-DSQG_BUILD_TESTS=OFF",
            "-DSQG_BUILD_CLI=OFF",
            "-DSQG_STAGE_PYTHON=OFF",
        ]

        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)
        subprocess.run(["cmake", ext.sourcedir, *cmake_args],
                       cwd=build_temp, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_core",
             f"-j{os.cpu_count() or 2}"],
            cwd=build_temp, check=True)


setup(
    ext_modules=[CMakeExtension("sqg_halfplane._core")],
    cmdclass={"build_ext": CMakeBuild},
)
