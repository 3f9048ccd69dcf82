"""Built-in test algebras and modules used throughout the suite and the demos."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .algebra import BoundQuiverAlgebra, FrobeniusStructure, Quiver, build_algebra, nakayama
from .exactcore import ExtensionField, Field, PrimeField
from .rep import Representation


def truncated_polynomial(field: Field, n: int) -> BoundQuiverAlgebra:
    """k[x]/(x^n)."""
    q = Quiver(["1"], [("x", "1", "1")])
    return build_algebra(q, [[(1, ("x",) * n)]], field, n)


def uniserial(alg: BoundQuiverAlgebra, i: int) -> Representation:
    """k[x]/(x^i) over k[x]/(x^n): x acts as a nilpotent Jordan block."""
    f = alg.field
    m = f.zeros((i, i))
    for r in range(1, i):
        m[r, r - 1] = f.one
    return Representation(alg, {"1": i}, {"x": m})


def quantum_plane(field: Field, q) -> BoundQuiverAlgebra:
    """A_q = F<x,y>/(x^2, y^2, xy - q yx)."""
    quiver = Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")])
    c = field.neg(field.element(q))
    rels = [[(1, ("x", "x"))], [(1, ("y", "y"))], [(1, ("x", "y")), (c, ("y", "x"))]]
    return build_algebra(quiver, rels, field, 3)


def kronecker(field: Optional[Field] = None) -> BoundQuiverAlgebra:
    """k[x,y]/(x^2, y^2), by default in characteristic 2."""
    return quantum_plane(field or PrimeField(2), 1)


def local_frobenius(alg: BoundQuiverAlgebra) -> FrobeniusStructure:
    """Functional picking the coefficient of the longest basis path."""
    top = max(alg.basis, key=len)
    return nakayama(alg, {alg.quiver.path_name(top): 1})


def m_gamma(alg: BoundQuiverAlgebra, gamma) -> Representation:
    """Span{v, xv} with y v = gamma x v."""
    f = alg.field
    x = f.zeros((2, 2))
    x[1, 0] = f.one
    y = f.zeros((2, 2))
    y[1, 0] = f.element(gamma) if not isinstance(gamma, np.integer) else gamma
    return Representation(alg, {"1": 2}, {"x": x, "y": y})


def gf4() -> ExtensionField:
    """GF(4) = GF(2)[t]/(t^2 + t + 1)."""
    return ExtensionField(2, 2, [1, 1, 1])


def klein_four(field: Optional[Field] = None) -> BoundQuiverAlgebra:
    """kV_4 = k[a,b]/(a^2, b^2) in characteristic 2 (a = 1+g1, b = 1+g2)."""
    return quantum_plane(field or gf4(), 1)


def cyclic_nakayama(field: Field, n: int, length: int) -> BoundQuiverAlgebra:
    """Cyclic quiver 0 -> 1 -> ... -> n-1 -> 0 modulo all paths of ``length`` arrows."""
    arrows = [(f"a{i}", str(i), str((i + 1) % n)) for i in range(n)]
    q = Quiver([str(i) for i in range(n)], arrows)
    # a path starting at i is a_{i+r-1} ... a_{i+1} a_i (first arrow rightmost)
    rels = [[(1, tuple(f"a{(i + r) % n}" for r in reversed(range(length))))] for i in range(n)]
    return build_algebra(q, rels, field, length)


def socle_frobenius(alg: BoundQuiverAlgebra) -> FrobeniusStructure:
    """Functional summing the coefficients of all maximal-length basis paths."""
    f = alg.field
    top = max(len(p) for p in alg.basis)
    vec = f.zeros(alg.dim)
    for i, p in enumerate(alg.basis):
        if len(p) == top:
            vec[i] = f.one
    return nakayama(alg, vec)
