import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arquiver.algebra import (
    AlgebraAutomorphism,
    AlgebraError,
    Quiver,
    algebra_from_json,
    algebra_to_json,
    build_algebra,
    nakayama,
    projective,
    regular_module,
)
from arquiver.catalog import cyclic_nakayama, kronecker, local_frobenius, quantum_plane, socle_frobenius, truncated_polynomial
from arquiver.exactcore import PrimeField, RationalField

F5 = PrimeField(5)


def test_quantum_plane_basis():
    alg = quantum_plane(F5, 2)
    assert alg.dim == 4
    assert alg.radical_layers() == [0, 1, 1, 2]
    # xy = 2 yx
    assert F5.equal(alg.mul(alg.arrow("x"), alg.arrow("y")), F5.mul(alg.mul(alg.arrow("y"), alg.arrow("x")), 2))


def test_path_composition_convention():
    # a: 1 -> 2, b: 2 -> 3; the path (b, a) runs 1 -> 3
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    p = q.path(["b", "a"])
    assert (p.src, p.tgt) == ("1", "3")
    with pytest.raises(AlgebraError):
        q.path(["a", "b"])


def test_rejects_non_admissible_relation():
    q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(AlgebraError):
        build_algebra(q, [[(1, ("x",))]], F5, 3)


def test_rejects_short_nilpotency_bound():
    q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(AlgebraError):
        build_algebra(q, [[(1, ("x",) * 4)]], F5, 2)


def test_nakayama_of_quantum_plane():
    # nu(x) = q x and nu(y) = q^-1 y for the functional dual to xy
    for q in (2, 3, 4):
        alg = quantum_plane(F5, q)
        frob = nakayama(alg, {"xy": 1})
        qinv = pow(q, -1, 5)
        assert F5.equal(frob.nu(alg.arrow("x")), F5.mul(alg.arrow("x"), q))
        assert F5.equal(frob.nu(alg.arrow("y")), F5.mul(alg.arrow("y"), qinv))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_nakayama_equation_random_elements(seed):
    alg = cyclic_nakayama(PrimeField(3), 3, 3)
    frob = socle_frobenius(alg)
    f = alg.field
    rng = np.random.default_rng(seed)
    a, b = f.random(alg.dim, rng), f.random(alg.dim, rng)
    lhs = f.matmul(frob.functional[None, :], alg.mul(a, b)[:, None])
    rhs = f.matmul(frob.functional[None, :], alg.mul(b, frob.nu(a))[:, None])
    assert f.equal(lhs, rhs)


def test_degenerate_functional_rejected():
    alg = truncated_polynomial(F5, 3)
    with pytest.raises(AlgebraError):
        nakayama(alg, {"x": 1})


def test_commutative_local_algebra_has_trivial_nakayama():
    alg = kronecker(PrimeField(2))
    assert local_frobenius(alg).nu.is_identity()


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_multiplication_associative(seed):
    alg = quantum_plane(F5, 3)
    rng = np.random.default_rng(seed)
    a, b, c = (F5.random(alg.dim, rng) for _ in range(3))
    assert F5.equal(alg.mul(alg.mul(a, b), c), alg.mul(a, alg.mul(b, c)))


def test_json_round_trip():
    for alg in [quantum_plane(F5, 2), truncated_polynomial(RationalField(), 4), cyclic_nakayama(PrimeField(3), 3, 2)]:
        frob = socle_frobenius(alg)
        alg2, frob2 = algebra_from_json(algebra_to_json(alg, frob))
        assert alg2.dim == alg.dim
        assert [alg2.quiver.path_name(p) for p in alg2.basis] == [alg.quiver.path_name(p) for p in alg.basis]
        assert alg.field.equal(alg2.table, alg.table)
        assert alg.field.equal(frob2.nu.matrix, frob.nu.matrix)


def test_malformed_json():
    with pytest.raises(AlgebraError):
        algebra_from_json({"field": {"char": 5}})


def test_automorphism_from_generators():
    alg = quantum_plane(F5, 2)
    g = AlgebraAutomorphism.from_generators(alg, {"x": F5.mul(alg.arrow("x"), 2), "y": alg.arrow("y")}, order=4)
    assert g.power(4).is_identity()
    assert g.compose(g.inverse()).is_identity()
    with pytest.raises(AlgebraError):
        # x -> y, y -> y is not invertible
        AlgebraAutomorphism.from_generators(alg, {"x": alg.arrow("y"), "y": alg.arrow("y")})


def test_regular_module_splits_into_projectives():
    alg = cyclic_nakayama(PrimeField(3), 3, 2)
    reg, _ = regular_module(alg)
    assert reg.dim == alg.dim == sum(projective(alg, v).dim for v in alg.quiver.vertices)


def test_opposite_algebra_dimension():
    alg = quantum_plane(F5, 2)
    op, _ = alg.opposite()
    assert op.dim == alg.dim
