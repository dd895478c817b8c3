
from setuptools import setup, find_packages

# read the contents of your README file
from pathlib import Path
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()


VERSION = '0.1.0'

setup(
    name='kangaroo-lab',
    version=VERSION,
    description='Pollard kangaroo interval discrete logarithms and a walk intersection laboratory',
    long_description=long_description,
    long_description_content_type='text/markdown',
    py_modules=['kangaroo'],
    install_requires=['numpy>=1.25', 'psutil', 'tqdm'],
    extras_require={'test': ['scipy']},
    entry_points={'console_scripts': ['kangaroo=kangaroo:main']},
    python_requires='>=3.9',
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*'])
)
