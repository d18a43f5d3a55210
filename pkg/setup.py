import os.path
from setuptools import find_packages, setup

# the directory containing this file
ROOT = os.path.dirname(__file__)

# the text of the README file
with open(os.path.join(ROOT, "README.md"), "r") as f:
    README = f.read()

setup(
    name="pylattice",
    version="0.1.0",
    description="Simulation and invariant measure verification for integrable lattice systems",
    long_description=README,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(exclude=("tests", "tests.*")),
    include_package_data=True,
    package_data={"pylattice": ["data/*.json"]},
    install_requires=["json_strong_typing", "numpy", "scipy", "mpmath"],
    entry_points={"console_scripts": ["pylattice = pylattice.__main__:main"]},
)
