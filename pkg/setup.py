# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Setup script for the Laplace cascade toolkit."""

from setuptools import setup, find_packages

setup(
    name='kinetic-cascade',
    version='0.3.0',
    description='Laplace cascade for 2x2 hyperbolic systems and the closed-form Verhulst model '
                'with telegraph noise',
    author='Mission Critical Email LLC',
    author_email='support@missioncriticalemail.com',
    license='MIT',
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    install_requires=[
        'click>=8.1.7,<8.2',
        'python-dotenv>=1.0.0',
        'openpyxl>=3.1.2',
        'numpy>=1.24',
        'scipy>=1.10',
        'sympy>=1.12',
    ],
    entry_points={
        'console_scripts': [
            'kinetic-cascade=src.ui.cli:cli',
        ],
    },
    python_requires='>=3.8',
)
