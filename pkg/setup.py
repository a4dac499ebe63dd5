from setuptools import Extension, setup

# The extension is optional: without it the package falls back to the pure
# Python batch loop at import.  -ffp-contract=off keeps the compiled kernel
# bit-identical to the pure implementation (no fused multiply-add).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lbsim._batchext",
                ["src/lbsim/_batchext.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
