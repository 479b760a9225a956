import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# The compiled kernels are optional; scoresheets.kernels falls back to the
# pure-Python versions when the extension is missing.
extensions = [
    Extension(
        "scoresheets._kernels",
        ["src/scoresheets/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
