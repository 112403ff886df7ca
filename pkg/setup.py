from setuptools import setup, find_packages

setup(
    name="datawords",
    version="0.6.1",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["main"],
    include_package_data=True,
    install_requires=[
        "networkx>=2.6",
        "numpy>=1.21",
        "scipy>=1.9",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    author="JKilla07,Krusha17",
    author_email="example@example.com",
    description="Emptiness of automata with data constraints and satisfiability of data LTL",
    keywords="automata, data words, buchi, presburger, ltl",
    python_requires='>=3.8',
    entry_points={
        'console_scripts': [
            'datawords=main:main',
        ],
    },
)
