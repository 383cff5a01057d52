#!/usr/bin/env python3
"""
Matrix Prover
Intuitionistic first-order theorem prover with checkable certificates and sequent proofs.
"""

from setuptools import setup, find_packages
import os

# Read the README file
def read_readme():
    with open("README.md", "r", encoding="utf-8") as fh:
        return fh.read()

# Read requirements
def read_requirements():
    runtime = ("pydantic", "pydantic-settings", "ply", "python-dotenv", "loguru")
    with open("requirements.txt", "r", encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    return [line for line in lines if line.split(">")[0].split("=")[0] in runtime]

# Get version from config
def get_version():
    version_file = os.path.join("config", "settings.py")
    with open(version_file, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("VERSION"):
                return line.split("=")[1].strip().strip('"').strip("'")
    return "0.1.0"

setup(
    name="matrixprove",
    version=get_version(),
    description="Intuitionistic first-order prover: matrix certificates, prefix unification and sequent proofs",
    long_description=read_readme(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests*", "docs*", "scripts*", "examples*"]),
    py_modules=["main"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Typing :: Typed",
    ],
    python_requires=">=3.9",
    install_requires=read_requirements(),
    extras_require={
        "dev": [
            "pytest>=7.0",
            "pytest-cov>=4.0",
            "pytest-mock>=3.6.0",
            "black>=22.0",
            "isort>=5.0",
            "flake8>=4.0",
            "mypy>=0.950",
        ],
    },
    entry_points={
        "console_scripts": [
            "matrixprove=main:main",
        ],
    },
    include_package_data=True,
    package_data={
        "": ["*.p", "*.md"],
    },
    zip_safe=False,
    keywords=[
        "theorem-prover",
        "intuitionistic-logic",
        "connection-method",
        "tptp",
        "sequent-calculus",
    ],
    license="MIT",
)
