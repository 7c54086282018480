"""
Setup script for Sensor Bandit package
"""

from setuptools import setup, find_packages
import os

# Read the contents of README file
this_directory = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='sensor-bandit',
    version='1.0.0',
    author='Phil Massyn',
    author_email='phil.massyn@icloud.com',
    description='Adaptive sensor placement with Thompson sampling over Bayesian histograms of a Poisson process',
    long_description=long_description,
    long_description_content_type='text/markdown',
    url='https://github.com/massyn/sensor-bandit',
    packages=find_packages(include=['sensorbandit', 'sensorbandit.*']),
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.7',
        'pandas>=1.5',
        'tqdm>=4.60',
    ],
    extras_require={
        'dev': [
            'pytest',
            'black',
            'flake8',
            'coverage',
        ],
    },
    entry_points={
        'console_scripts': [
            'sensor-bandit=sensorbandit.cli:main',
        ],
    },
    keywords='bandits thompson-sampling poisson-process sensor-placement simulation',
    project_urls={
        'Bug Reports': 'https://github.com/massyn/sensor-bandit/issues',
        'Source': 'https://github.com/massyn/sensor-bandit',
        'Documentation': 'https://sensor-bandit.readthedocs.io/',
    },
)
