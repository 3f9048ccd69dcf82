"""Exact computations with Frobenius algebras given by bound quivers.

Modules: exact fields and matrices, bound quiver algebras, representations,
Auslander-Reiten theory and knitting, translation quiver automorphisms, length
profiles modulo l, smash products with abelian groups, and the Grothendieck
form dim Hom.
"""

__version__ = "0.1.0"
