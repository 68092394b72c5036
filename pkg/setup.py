from setuptools import setup, find_packages
import sys, os.path

# Don't import tempokey here, since deps may not be installed
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'tempokey'))
from version import VERSION

setup(name='tempokey',
      version=VERSION,
      description='Security analysis and simulation of time-coding quantum key distribution protocols.',
      license='MIT',
      packages=[package for package in find_packages()
                if package.startswith('tempokey')],
      zip_safe=False,
      install_requires=[
          'scipy', 'numpy>=1.17', 'six', 'cloudpickle>=1.2.0',
      ],
      entry_points={
          'console_scripts': ['tempokey=tempokey.cli.main:main'],
      },
      tests_require=['pytest'],
      python_requires='>=3.6',
      classifiers=[
          'Programming Language :: Python :: 3',
          'Programming Language :: Python :: 3.6',
          'Programming Language :: Python :: 3.7',
          'Programming Language :: Python :: 3.8',
      ],
)
