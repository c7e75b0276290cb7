"""
Setup script for the jetmaps package.
"""

from setuptools import setup, find_packages

setup(
    name="jetmaps",
    version="0.1.0",
    description="Exact lifting and verification of contact mappings between PDE systems",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "pydantic>=2.5.0",
        "typer>=0.9.0",
        "rich>=13.0.0",
        "typing-extensions>=4.7.0",
    ],
    extras_require={
        "dev": ["pytest>=8.0.0", "hypothesis>=6.100.0"],
    },
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "jetmaps=cli.main:app",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
