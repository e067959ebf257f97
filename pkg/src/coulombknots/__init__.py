"""Coulomb eigenfunctions with knotted nodal lines.

Numerical construction of complex-valued Coulomb (hydrogen) eigenfunctions
whose nodal sets contain a prescribed knot or link, together with the
machinery needed to verify the construction end to end: stable special
functions, radial-mode asymptotics, nodal-curve tracing, topological
invariants, and the Dirichlet spectral bound for the Coulomb operator on
small balls.
"""

__version__ = "0.1.0"
