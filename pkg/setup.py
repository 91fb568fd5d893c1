from setuptools import setup

long_descr = """Optimal curves of genus 1, 2 and 3 over the prime fields of
discriminant -19: search, verification, L-polynomials and a table auditor.
"""

setup(
    name='pyoptcurve',
    version='0.1.0',
    license='GPL3',
    description='Optimal curves over prime fields of discriminant -19.',
    long_description=long_descr,
    packages=['pyoptcurve'],
    package_data={'pyoptcurve': ['data/*.csv']},
    python_requires='>=3.8',
    install_requires=['numpy>=1.20', 'pandas>=1.3'],
    extras_require={'test': ['pytest>=6']},
    entry_points={'console_scripts': ['optcurve=pyoptcurve.cli:main']},
)
