# Legacy shim for tools that still call setup.py directly.
# Metadata, dependencies and the console script live in pyproject.toml.

from setuptools import find_packages, setup

setup(
    packages=find_packages(where="src", include=["harmonic_ctc", "harmonic_ctc.*"]),
    package_dir={"": "src"},
)
