from os import path
from setuptools import setup, find_packages
from usdcoherence import __version__

HERE = path.abspath(path.dirname(__file__))
with open(path.join(HERE, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name=__version__.__title__,
    version=__version__.__version__,
    description=__version__.__description__,
    long_description=long_description,
    long_description_content_type="text/markdown",
    author=__version__.__author__,
    license=__version__.__license__,
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires=">=3.8",
    install_requires=["numpy>=1.22", "scipy>=1.8", "PyYAML==6.0.1", "Cerberus==1.3.5"],
    entry_points={
        "console_scripts": ["usdcoherence = usdcoherence.app:main"],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "Intended Audience :: Education",
        "Topic :: Scientific/Engineering :: Physics",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: Implementation :: CPython"
    ],
)
