from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8", errors="ignore") as fh:
    long_description = fh.read()

setup(
    name="opk",
    version="1.0.0",
    description="Arbitrary-precision orthogonal polynomials for the generalised Airy and sextic Freud weights",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    install_requires=[
        "click>=8.1.0",
        "tabulate>=0.9.0",
        "mpmath>=1.3.0",
    ],
    entry_points={
        "console_scripts": [
            "opk=opk.cli:main",
        ],
    },
)
