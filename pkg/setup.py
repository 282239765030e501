# Builds the compiled interpolation kernel. If Cython or a C compiler is
# unavailable the package still installs and falls back to the pure-Python
# kernel at import time (see bchlattice.kernels).
import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "bchlattice._ckernel",
                ["src/bchlattice/_ckernel.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"bchlattice: building without compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)
