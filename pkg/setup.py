from distutils.core import setup
setup(
    name='bnchain',
    scripts=['bnchain.py'],
    packages=['.'],
    version='1.0.0',
    description="""Verification toolkit for limit linear series on chains of elliptic curves: vanishing tables,
    inductive constructions, dimension accounting and semistability of rank-two bundles on chains.""",
    keywords=['algebraic geometry', 'limit linear series', 'elliptic chains', 'verification', 'python'],
    install_requires=[
        'colored==1.4.2',
        'ordered-set==3.1.1',
    ],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3.6',
    ],
)
