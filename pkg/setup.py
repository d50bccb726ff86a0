from setuptools import find_packages, setup

from markovmono import __version__

setup(
    name='markovmono',
    version=__version__,
    description='Exact generalized Markov numbers, line ratios and monotonicity classification',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    install_requires=[
        'pyyaml>=5.4.0',
        'pydantic>=2.0.0',
        'numpy>=1.20.0',
        'mpmath>=1.2.0',
    ],
    extras_require={'test': ['pytest>=6.0.0']},
    entry_points={'console_scripts': ['markovmono=markovmono.main:main']},
)
