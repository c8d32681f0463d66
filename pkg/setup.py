"""
Setup script for the Lie Workbench
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README for long description
readme_path = Path(__file__).parent / "README.md"
if readme_path.exists():
    with open(readme_path, "r", encoding="utf-8") as fh:
        long_description = fh.read()
else:
    long_description = "Combinatorial bases of standard C_l^(1)-modules: enumeration and exact verification"

# Read requirements
requirements_path = Path(__file__).parent / "requirements.txt"
if requirements_path.exists():
    with open(requirements_path, "r", encoding="utf-8") as fh:
        requirements = [
            line.strip()
            for line in fh
            if line.strip() and not line.startswith("#") and not line.startswith("pytest")
        ]
else:
    requirements = [
        "pandas>=1.3.0",
        "numpy>=1.21.0",
        "tqdm>=4.62.0",
        "python-dotenv>=0.19.0",
        "joblib>=1.0.0",
        "PyYAML>=5.4.0",
        "pydantic>=1.8.0",
    ]

setup(
    name="lie-workbench",
    version="1.0.0",
    description="Admissible colored partitions, PBW quotients and characters for C_l^(1) at level k",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(include=["core", "core.*", "pipeline", "pipeline.*"]),
    py_modules=["config"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        "dev": [
            "pytest>=6.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "lie-workbench=pipeline.workbench:main",
        ],
    },
    include_package_data=True,
    data_files=[("config", ["config/default_config.json"])],
    zip_safe=False,
    keywords=[
        "affine lie algebra", "combinatorial basis", "colored partitions",
        "symplectic", "representation theory",
    ],
)
