# src/homfin/algebra/__init__.py

"""
homfin Algebra Package
----------------------

The exact-arithmetic engine. Everything here is pure computation: no I/O, no
configuration.

Modules:
- scalars, ncpoly, presentation: fields, words and non-commutative
  polynomials, presentation parsing.
- groebner: truncated Gröbner bases and the `GradedAlgebra` backend.
- linalg: sparse exact linear algebra on sympy domain matrices.
- modules: graded modules, degree-preserving maps, kernels and generator
  selection.
- resolutions: free resolutions, exactness and minimality checks, Betti
  tables, FP_n verdicts and the Künneth product.
- enveloping: opposite and enveloping algebras, bimodules.
- group_rings: finite monoids and groups, their algebras, and the
  left-to-bimodule conversion for groups.
- retractions: ring retractions, retractive pairs and the twin-resolution
  transport of FP_n.
"""

__all__ = [
    "GradedAlgebra",
    "MonoidAlgebra",
    "EnvelopingAlgebra",
    "minimal_resolution",
    "fpn_verdict",
    "RingRetraction",
    "transport_fpn",
]
