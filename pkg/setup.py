"""
This setup.py file sets up our package to be installable on any computer,
so that folks can `import pmulink` (or run `pmulink` at the command
line) from within any directory.

Thanks to this file, you can...

...tell python to look for code in the current directory (which you
can continue to edit), by typing

`pip install -e .`

...or move a copy of this code to your site-packages directory, where python will
be able to find it (but you won't be able to keep editing it), by typing

`pip install .`

To install the tools for running the tests too, try `pip install -e ".[develop]"`.
"""

# setuptools does the heavy lifting
from setuptools import setup, find_packages
import os, sys

# running `python setup.py release` from the command line will post to PyPI
if "release" in sys.argv[-1]:
    os.system("python setup.py sdist")
    os.system("twine upload dist/*")
    os.system("rm -rf dist/pmulink*")
    sys.exit()

# get __version__ without importing the package
exec(open("pmulink/version.py").read())

# run the setup function
setup(
    # the name on PyPI (and for pip install)
    name="pmulink",
    # read from pmulink/version.py above
    version=__version__,
    # one line for search results
    description="Simulate and measure synchrophasor delays over LTE cat-M links.",
    # the README doubles as the long description
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    # every directory with an __init__.py
    packages=find_packages(),
    # the presets, golden frames, and help tables need to come along
    package_data={
        "pmulink": [
            "data/presets/*.cfg",
            "data/golden/*.hex",
            "traces/actions/descriptions.txt",
            "traces/helpers/descriptions.txt",
        ]
    },
    include_package_data=True,
    # the command line tool
    entry_points={"console_scripts": ["pmulink=pmulink.harness.cli:main"]},
    # where this package belongs
    classifiers=[
        "Intended Audience :: Science/Research",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering",
        "Topic :: System :: Networking",
    ],
    # the numerical and table stack
    install_requires=[
        "numpy",
        "scipy",
        "astropy>=5.0",
        "pandas",
        "tqdm",
    ],
    # dataclasses and f-strings everywhere
    python_requires=">=3.8",
    # `pip install pmulink[develop]` adds the test and docs tools
    extras_require={
        "develop": [
            "pytest",
            "black",
            "mkdocs",
            "mkdocs-material",
            "mkdocstrings",
            "mkdocstrings-python",
            "twine",
            "pre-commit",
        ]
    },
    zip_safe=False,
    # free to use and adapt
    license="MIT",
)
