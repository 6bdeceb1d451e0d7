__version__ = "0.1.0"

from setuptools import setup, find_packages
from pathlib import Path

# Read the README.md for the long description
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name="zarembapi",
    version=__version__,
    description="Computational toolkit around Zaremba's conjecture",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests*", "docs*", "examples*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.23",
        "tabulate>=0.9.0",
        "tqdm>=4.65.0",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
        "docs": ["mkdocs-material>=9.0"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    entry_points={
        "console_scripts": [
            "zarembapi=zarembapi.cli:main",
        ],
    },
)
