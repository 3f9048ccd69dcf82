import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arquiver.algebra import Quiver, build_algebra, simple
from arquiver.artheory import dtr, tau
from arquiver.catalog import cyclic_nakayama, gf4, kronecker, local_frobenius, quantum_plane, truncated_polynomial, uniserial
from arquiver.exactcore import PrimeField
from arquiver.rep import direct_sum, hom_dim, iso, random_module, twist
from arquiver.smash import (
    CharacterAction,
    SmashError,
    counting_identity,
    induce,
    kronecker_c3,
    reciprocity_dims,
    restrict,
    restriction_of_ar_sequence,
    smash_construct,
    smash_frobenius,
    stabilizer_transversal,
    twist_gamma,
    twist_r,
)

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


@pytest.fixture(scope="module")
def c3():
    return kronecker_c3()


def test_kronecker_c3_quiver(c3):
    sp, frob, _ = c3
    q = sp.alg.quiver
    assert q.vertices == ["e0", "e1", "e2"]
    assert sp.alg.dim == 12
    # x has weight 2 and y weight 1: x_e{g} starts at g + 2, y_e{g} at g + 1
    src = {a.name: (a.src, a.tgt) for a in q.arrows}
    assert src["x_e0"] == ("e2", "e0") and src["y_e0"] == ("e1", "e0")
    assert len(sp.alg.relations) == 9


def test_trivial_group_gives_same_algebra():
    gam = quantum_plane(F5, 2)
    sp = smash_construct(gam, CharacterAction(gam, [1], {"x": [0], "y": [0]}))
    assert sp.alg.dim == gam.dim
    assert sp.alg.quiver.vertices == ["e0"]
    assert F5.equal(sp.alg.table, gam.table)


def test_truncated_polynomial_c2_is_cyclic_nakayama():
    # k[x]/(x^2) with C2 acting by x -> -x: two vertices, two arrows, paths of length 2 vanish
    gam = truncated_polynomial(F3, 2)
    sp = smash_construct(gam, CharacterAction(gam, [2], {"x": [1]}))
    target = cyclic_nakayama(F3, 2, 2)
    assert sp.alg.dim == target.dim == 4
    assert sorted((a.src, a.tgt) for a in sp.alg.quiver.arrows) == [("e0", "e1"), ("e1", "e0")]
    assert sp.alg.radical_layers() == target.radical_layers()
    frob = smash_frobenius(sp, local_frobenius(gam))
    for v in sp.alg.quiver.vertices:
        assert iso(tau(simple(sp.alg, v), frob), dtr(simple(sp.alg, v)))


def test_char_divides_group_order():
    gam = kronecker(F2)
    with pytest.raises(SmashError):
        CharacterAction(gam, [2], {"x": [1], "y": [0]})


def test_missing_roots_of_unity():
    gam = quantum_plane(F5, 1)
    with pytest.raises(SmashError):
        CharacterAction(gam, [3], {"x": [1], "y": [2]})


def test_action_must_preserve_relations():
    # x^2 = y^2 is not preserved by x -> i x, y -> y
    q = Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")])
    gam = build_algebra(q, [[(1, ("x", "x")), (-1, ("y", "y"))], [(1, ("x", "y"))], [(1, ("y", "x"))]], F5, 3)
    assert gam.dim == 4
    with pytest.raises(SmashError):
        CharacterAction(gam, [4], {"x": [1], "y": [0]})


def test_action_json():
    gam = kronecker(gf4())
    act = CharacterAction.from_json(gam, {"group": {"cyclic": [3]}, "arrows": {"x": {"element": [2]}, "y": {"element": [1]}}})
    assert CharacterAction.from_json(gam, act.to_json()).weights == act.weights
    with pytest.raises(SmashError):
        CharacterAction.from_json(gam, {"group": {"dihedral": [3]}, "arrows": {}})
    with pytest.raises(SmashError):
        CharacterAction.from_json(gam, {"group": {"cyclic": [3]}, "arrows": {"x": {"element": [1]}}})


def test_non_local_algebra_rejected():
    alg = cyclic_nakayama(F3, 2, 2)
    with pytest.raises(SmashError):
        CharacterAction(alg, [2], {"a0": [0], "a1": [0]})


def test_character_twist_matches_automorphism_twist(c3):
    sp, _, _ = c3
    rng = np.random.default_rng(0)
    for _ in range(4):
        n = random_module(sp.gamma, rng)
        for g in sp.group:
            assert twist_gamma(n, g, sp).equal(twist(n, sp.action.automorphism(g)))


@settings(max_examples=8, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_induce_restrict_round_trips(seed):
    sp, _, _ = kronecker_c3()
    rng = np.random.default_rng(seed)
    n = random_module(sp.gamma, rng)
    ind = induce(n, sp)
    assert ind.dim == 3 * n.dim
    assert iso(restrict(ind, sp), direct_sum([twist_gamma(n, g, sp) for g in sp.group])[0])
    m = random_module(sp.alg, rng)
    assert iso(induce(restrict(m, sp), sp), direct_sum([twist_r(m, g, sp) for g in sp.group])[0])
    a, b = reciprocity_dims(n, m, sp)
    assert a == b


def test_restricted_simples(c3):
    sp, _, _ = c3
    s = simple(sp.alg, "e1")
    assert restrict(s, sp).dim == 1
    assert hom_dim(restrict(s, sp), simple(sp.gamma, "1")) == 1
    # every vertex simple restricts to the same Gamma-simple, so S is G-stable and T has one element
    stab, trans = stabilizer_transversal(simple(sp.gamma, "1"), sp)
    assert len(stab) == 3 and trans == [(0,)]
    assert counting_identity(s, simple(sp.gamma, "1"), sp)["holds"]


def test_restriction_of_ar_sequence_at_simple(c3):
    sp, frob, fg = c3
    rep = restriction_of_ar_sequence(simple(sp.alg, "e0"), frob, sp, fg)
    assert rep["certified"] and rep["holds"]
    assert rep["class_identity"] and rep["middle_identity"] and rep["tau_identity"]


def test_uniserial_over_c2_smash():
    gam = truncated_polynomial(F3, 3)
    sp = smash_construct(gam, CharacterAction(gam, [2], {"x": [1]}))
    u = uniserial(gam, 2)
    ind = induce(u, sp)
    assert ind.dim_vector == (2, 2)
    assert iso(restrict(ind, sp), direct_sum([u, twist_gamma(u, (1,), sp)])[0])
