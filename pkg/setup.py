import setuptools

# The compiled flow kernel is optional: if Cython or a C toolchain is
# missing, the package still installs and falls back to the pure-Python
# kernel at import time.
ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            setuptools.Extension(
                "steineraug._dinic_cy",
                sources=["src/steineraug/_dinic_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print(f"building without compiled flow kernel: {exc}")

setuptools.setup(ext_modules=ext_modules)
