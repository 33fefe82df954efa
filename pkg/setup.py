from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # no Cython: install the pure-Python package only
    setup()
else:
    extensions = [
        Extension(
            "replab._kernels",
            ["src/replab/_kernels.pyx"],
            language="c++",
            extra_compile_args=["-O3"],
        )
    ]
    setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
