import os
from setuptools import setup

README = open(os.path.join(os.path.dirname(__file__), 'README.rst')).read()

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))

PACKAGES = [
    'optimal_diffusion',
    'optimal_diffusion.management',
    'optimal_diffusion.management.commands',
]

REQUIREMENTS = [
    'Django>=3.2',
    'numpy>=1.20',
    'scipy>=1.6',
]

setup(
    name='optimal-diffusion',
    description='Convergence-rate optimal reversible diffusions for a given stationary law',
    long_description=README,
    version='0.1.0',
    packages=PACKAGES,
    classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Framework :: Django',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    install_requires=REQUIREMENTS,
    zip_safe=False
)
