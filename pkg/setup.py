"""
Setup script para MMBeamSim
"""

from setuptools import setup, find_packages
from pathlib import Path

# Lê o README
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text() if (this_directory / "README.md").exists() else ""

# Lê os requirements (sem as ferramentas de desenvolvimento)
requirements = []
if (this_directory / "requirements.txt").exists():
    lines = (this_directory / "requirements.txt").read_text().splitlines()
    development = lines.index("# Development") if "# Development" in lines else len(lines)
    requirements = [line for line in lines[:development] if line and not line.startswith("#")]

setup(
    name="mmbeamsim",
    version="0.1.0",
    author="MMBeamSim Team",
    description="Simulador de eficiência espectral e energética de estruturas de beamforming mmWave",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["src", "src.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    extras_require={
        "dev": [
            "pytest>=7.4.0",
            "hypothesis>=6.80.0",
            "black>=23.0.0",
            "flake8>=6.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "mmbeamsim=src.cli.main:entry_point",
        ],
    },
    include_package_data=True,
    package_data={
        "": ["*.md", "*.json"],
    },
    zip_safe=False,
    keywords="mmwave, mu-mimo, beamforming, hybrid, energy-efficiency, monte-carlo",
)
