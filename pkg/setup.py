import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("WEIGHTEDPROJ_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("weightedproj._speedups", ["src/weightedproj/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
