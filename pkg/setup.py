"""Setup the MirrorPhase Library."""

# setuptools setup function.
from setuptools import setup

# Version.
from mirrorphase import __version__

setup(
    name="mirrorphase",
    version=__version__,
    author="The MirrorPhase Developers",
    description="Early-stopped hyperbolic-entropy mirror descent for noisy sparse phase retrieval.",
    packages=[
        "mirrorphase",
        "mirrorphase.lib",
        "mirrorphase.classes",
        "mirrorphase.classes.signal",
        "mirrorphase.classes.geometry",
        "mirrorphase.classes.risk",
        "mirrorphase.classes.solver",
        "mirrorphase.classes.diagnostics",
        "mirrorphase.experiments",
        "mirrorphase.cli",
    ],
    install_requires=[
        "numpy>=1.17",
        "scipy",
        "pycryptodomex",
        "click>=8.0",
        "pytest",
        "pytest-ordering",
    ],
    entry_points={"console_scripts": ["mirrorphase=mirrorphase.cli.main:cli"]},
    python_requires=">=3.8",
)
