from setuptools import setup

# Metadata goes in setup.cfg. These are here for GitHub's dependency graph.
setup(
    name="charsum",
    install_requires=["mpmath>=1.2", "sympy>=1.10", "click>=8.0"],
)
