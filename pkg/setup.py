import re
import ast
from setuptools import setup

_version_re = re.compile(r'__version__\s+=\s+(.*)')

with open('lislsim/__init__.py', 'rb') as f:
    version = str(ast.literal_eval(_version_re.search(
        f.read().decode('utf-8')).group(1)))

setup(
    name='lislsim',
    version=version,
    license='BSD',
    description='Flow-level simulator of laser inter-satellite links',
    packages=['lislsim'],
    include_package_data=True,
    zip_safe=False,
    platforms='any',
    python_requires='>=3.6',
    install_requires=[
        'Werkzeug>=0.10',
        'click>=7.0',
        'simplejson>=3.8',
        'blinker>=1.4',
        'networkx>=2.4',
        'numpy>=1.17',
    ],
    entry_points='''
        [console_scripts]
        lislsim=lislsim.cli:main
    '''
)
