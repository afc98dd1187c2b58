from setuptools import setup, find_packages
from sg_workbench.version import version

with open("Readme.md", "r") as file_handler:
    long_description = file_handler.read()

setup(
    name="sg-workbench",
    description="Singularity categories of finite-dimensional algebras: syzygies, periodicity certificates, Leavitt cohomology",
    version=version,
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    packages=find_packages(exclude=["tests"]),
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.8, <4',
    install_requires=['numpy', 'sympy'],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'sg_workbench=sg_workbench.__main__:main',
        ],
    },
)
