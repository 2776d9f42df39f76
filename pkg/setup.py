import os

from setuptools import Extension, setup

PYX = os.path.join("src", "fano_lines", "_kernel", "_speedups.pyx")

extensions = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        extensions = cythonize(
            [
                Extension(
                    "fano_lines._kernel._speedups",
                    [PYX],
                    extra_compile_args=["-O2"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=extensions)
