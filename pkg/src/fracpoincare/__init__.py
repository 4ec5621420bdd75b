"""
fracpoincare - Fractional Poincaré constants on box and strip domains.

This package provides tools for:
- Closed-form and quadrature values of singular fractional interaction energies
- Gagliardo seminorms and Rayleigh quotients of indicator functions
- The strip-family counterexample domain and its vanishing quotient sequence
- Sufficient and necessary condition checkers for the fractional Poincaré inequality
- Galerkin fractional Dirichlet eigenvalues on intervals and rectangles
"""

__version__ = "0.1.0"
