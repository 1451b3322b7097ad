import setuptools

setuptools.setup(
    name='puddle',
    version='0.1.0',
    python_requires='>=3.8.0',
    packages=setuptools.find_packages(exclude=['examples', 'examples.*']),
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.4',
        'svgwrite',
    ],
    extras_require={
        'dev': [
            # https://github.com/pytest-dev/pytest/issues/7632
            'coverage>=5.2.1',
            'flake8',
            'hypothesis',
            'isort',
            'mypy==1.4.1',
            'pytest',
            'pytest-cov',
            'Pygments>=2.6.1',
            'sphinx>=3.3.0',
            'wheel',
        ],
        'pd': ['pandas'],
    },
    entry_points={
        'console_scripts': ['puddle = puddle.cli:main'],
    },
    package_data={
        'puddle': ['py.typed'],
    },
)
