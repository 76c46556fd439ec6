"""Exact computations for invariant rings of Artin-Schelter Gorenstein algebras.

Subpackages and modules:

- :mod:`qinvar.exactmath` -- rationals, polynomials, rational functions, matrices, lattices
- :mod:`qinvar.algebras` -- algebra descriptors and PBW normal forms
- :mod:`qinvar.automorphisms` -- graded/filtered automorphisms and finite groups
- :mod:`qinvar.invariants` -- trace series, homological determinants, Molien series, verdicts
- :mod:`qinvar.weyl` -- classical and quantum Weyl algebras
- :mod:`qinvar.lie` -- Chevalley bases, diagram automorphisms, inner automorphisms
- :mod:`qinvar.cli` -- workspace documents and reports
"""

__version__ = "0.1.0"
