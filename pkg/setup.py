from setuptools import setup, find_packages

setup(
    name="hillspec",
    packages=find_packages(),
    install_requires=[
        'python-dotenv>=1.0.1',
        'pyyaml>=6.0.1',
        'pydantic>=2.5',
        'numpy>=1.26',
        'scipy>=1.11',
        'click>=8.1.7',
        'jinja2>=3.1.2',
        'rich>=13.7.0',
    ],
    package_data={
        'src.presentation.reports': ['templates/*.svg.j2'],
    },
    entry_points={
        'console_scripts': [
            'hillspec=src.presentation.cli.cli:cli'
        ],
    }
)
