from setuptools import setup, find_packages

setup(
    name='dna-reader',
    version='0.1.0',
    description='On-line De Bruijn graph DNA fragment assembler with greedy gene extraction',
    license='MIT',
    packages=find_packages(exclude=['tests', 'tests.*']),
    package_data={'dna_reader': ['config.yaml']},
    python_requires='>=3.9',
    install_requires=[
      'numpy',
      'tqdm',
      'flax',
      'jaxtyping',
      'hydra-core',
      'tensorflow',
    ],
    extras_require={
      'test': ['pytest'],
    },
    entry_points={
      'console_scripts': ['dna-reader=dna_reader.main:main'],
    },
)
