"""Exact-arithmetic toolkit for nilpotent Lie algebras and their invariants.

Modules:
    exactla    rational linear algebra and polynomial arithmetic
    liealg     Lie algebras from structure constants, series, invariants
    extensions second cohomology and central extensions
    qforms     binary cubics, cubic fields, Q-forms, abelian-by-cyclic groups
    hlspace    Hermite-Lorentz data, admissibility, conjugation
    grassmann  planes in sl(3), Plucker coordinates, orbit normal forms
    catalog    the named algebra catalog, identification, self-verification
    cli        command-line front end and text format
"""

__version__ = "0.1.0"
