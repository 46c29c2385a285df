from setuptools import setup
setup(
    name = 'qweigh',
    packages = ['qweigh','qweigh.field','qweigh.designs','qweigh.qsim','qweigh.protocols','qweigh.cli','qweigh.utils'],
    version = '1.0.0',
    description = 'Quantum and classical query complexity of weighing matrix and shifted Legendre problems',
    long_description_content_type="text/markdown",
    long_description=open('README.md').read(),
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
        ],
    include_package_data=True,    
    package_data={'': ['*.json']},
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.5',
        'pandas>=1.0',
        'sympy>=1.7',
    ],
    extras_require={
        'test': ['pytest>=6'],
    },
    entry_points={
        'console_scripts': ['qweigh = qweigh.cli:main'],
    },
) 
