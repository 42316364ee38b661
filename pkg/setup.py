import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    kernels = Extension(
        "qdarwin._kernels",
        ["src/qdarwin/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        # -fcx-limited-range drops the inf/nan recovery branch in complex
        # multiplies, which is what lets gcc vectorize the 4x4 updates
        extra_compile_args=["-O3", "-fcx-limited-range", "-funroll-loops", "-march=native"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    kernels.optional = True  # fall back to the NumPy kernels if the build fails
    ext_modules = cythonize([kernels], compiler_directives={"language_level": "3"})
    for ext in ext_modules:
        ext.optional = True

setup(ext_modules=ext_modules)
