import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    # optional=True: a failed compile degrades to the pure numpy backend
    # selected at import time instead of breaking the install.
    extensions = cythonize(
        [
            Extension(
                "eppspulley._core",
                ["src/eppspulley/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
