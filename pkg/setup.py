"""Setup module."""
from setuptools import setup

with open('README.md', 'r', encoding='UTF-8') as file:
    README = file.read()

setup(
    name='segnet',
    version='0.1.0',
    packages=['segnet', 'segnet.base', 'segnet.cli', 'segnet.config', 'segnet.detection', 'segnet.energy',
              'segnet.protocol', 'segnet.simkernel', 'segnet.topology', 'segnet.tracing'],
    package_data={'segnet.config': ['fixtures/*.toml']},
    include_package_data=True,
    python_requires='>=3.11.0',
    install_requires=['pydantic>=2', 'wrapt', 'numpy'],
    extras_require={'test': ['pytest', 'hypothesis']},
    entry_points={'console_scripts': ['segnet = segnet.cli:main']},

    description='Discrete-event simulator of a secure geo-sensor network with sleep-deprivation detection',
    long_description=README,
    long_description_content_type='text/markdown',

    keywords=['wireless sensor network', 'simulation', 'intrusion detection', 'sleep deprivation'],
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python :: 3.11',
    ],
)
