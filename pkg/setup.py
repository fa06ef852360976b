import os
from setuptools import setup, find_packages

packages=find_packages('.')

setup(
    name = "nil2",
    version = "0.1.0",
    author = "nil2 developers",
    description = ("Exact computations of dominions, absolute closure and amalgamation bases in class-2 nilpotent groups."),
    license = "MIT",
    keywords = "group theory nilpotent groups dominions absolute closure amalgamation ",
    packages=packages,
    install_requires=[
        "numpy",
        "sympy>=1.14",
    ],
    extras_require={
        "tests": ["pytest", "hypothesis"],
        "doc": ["sphinx"],
    },
    entry_points={
        "console_scripts": ["nil2=nil2.cli:main"],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
