from setuptools import setup, find_packages
import os


here = os.path.abspath(os.path.dirname(__file__))


install_requires = [
    line.strip() for line in open(
        os.path.join(here, 'requirements.txt'))
]

with open(os.path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()


setup(
    name="qconformal",
    version="0.1.0",  # NOQA
    description='Exact symbolic verification of q-deformed conformal field equations',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='MIT License',
    packages=find_packages(exclude=['tests', 'tests.*']),
    scripts=['bin/verify'],
    install_requires=install_requires,
    extras_require={'test': ['pytest', 'hypothesis']},
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.8',
    ],
    zip_safe=False,
)
