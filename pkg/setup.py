from setuptools import find_packages, setup

requires = [
    'docopt',
    'networkx',
]

test_requires = [
    'pytest>=7',
    'hypothesis',
]

setup(
    name='stratkit',
    version='0.1.0',
    description='Finite topological spaces, decompositions and '
                'stratifications with exhaustive equivalence checks',
    long_description=open('README.rst').read(),
    license='AGPLv3',
    packages=find_packages(include=['src', 'src.*']),
    install_requires=requires,
    extras_require={'test': test_requires},
    python_requires='>=3.8',
    zip_safe=False,
    entry_points={
        'console_scripts': ['stratkit=src.cli:cli']
    },
    classifiers=[],
)
