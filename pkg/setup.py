#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""orlicz_embedding
Orlicz norms, permutation averages and the experiments that test them.
"""
import sys
from setuptools import setup, find_packages


# from https://github.com/pytest-dev/pytest-runner#conditional-requirement
needs_pytest = {'pytest', 'test', 'ptr'}.intersection(sys.argv)
pytest_runner = ['pytest-runner'] if needs_pytest else []

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

with open('requirements.txt') as fd:
    requirements = fd.read()

setup(
    name='orlicz_embedding',
    author="The orlicz_embedding developers",
    description=__doc__.splitlines()[1],
    long_description=readme + '\n\n' + history,
    long_description_content_type='text/x-rst',
    version='2026.10.17',
    license="BSD-3-Clause",

    # Which Python importable modules should be included when your package is
    # installed, handled automatically by setuptools.
    packages=find_packages(include=['orlicz_embedding']),

    # The demonstration and acceptance suites and the sample options file
    package_data={'orlicz_embedding': ['data/*.json', 'data/*.ini']},
    include_package_data=True,

    # Allows `setup.py test` to work correctly with pytest
    setup_requires=[] + pytest_runner,

    # Required packages, pulls from pip if needed; do not use for Conda
    # deployment
    install_requires=requirements,
    python_requires='>=3.8',

    test_suite='tests',

    # Valid platforms your code works on, adjust to your flavor
    platforms=['Linux',
               'Mac OS-X',
               'Unix',
               'Windows'],

    zip_safe=False,

    keywords=['Orlicz norm', 'permutation average', 'rearrangement'],
    classifiers=[
        'Environment :: Console',
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: BSD License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
    ],
    entry_points={
        'console_scripts': [
            'orlicz-embedding = orlicz_embedding.cli:main',
        ],
    }
)
