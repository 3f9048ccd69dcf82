import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arquiver.catalog import cyclic_nakayama, local_frobenius, quantum_plane, socle_frobenius, truncated_polynomial, uniserial
from arquiver.algebra import projective, simple
from arquiver.exactcore import PrimeField, RationalField
from arquiver.grothform import (
    ExactSequence,
    GrothElement,
    GrothError,
    HomForm,
    IsoRegistry,
    dual_matrix,
    pair,
    random_exact_sequence,
    seq_class,
    split_along_summand,
)
from arquiver.rep import ModuleMap, decompose, direct_sum, hom_dim

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def test_registry_identifies_isomorphic_modules():
    alg = truncated_polynomial(F5, 3)
    reg = IsoRegistry(alg)
    a = reg.register(uniserial(alg, 2))
    b = reg.register(uniserial(alg, 2))
    c = reg.register(uniserial(alg, 1))
    assert a == b != c and len(reg) == 2
    assert reg.label(a) == "[2]"


def test_register_module_counts_multiplicities():
    alg = truncated_polynomial(F5, 3)
    reg = IsoRegistry(alg)
    m, _, _ = direct_sum([uniserial(alg, 1), uniserial(alg, 2), uniserial(alg, 1)])
    cls = reg.register_module(m)
    assert sorted(cls.coeffs.values()) == [1, 2]


@settings(max_examples=25, deadline=None)
@given(
    u=st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    v=st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    w=st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    k=st.integers(-3, 3),
)
def test_form_is_bilinear(u, v, w, k):
    alg = truncated_polynomial(F5, 3)
    reg = IsoRegistry(alg)
    for i in range(1, 4):
        reg.register(uniserial(alg, i))
    form = HomForm(reg)
    el = lambda c: GrothElement(reg, dict(enumerate(c)))  # noqa: E731
    assert form(el(u) + el(v), el(w)) == form(el(u), el(w)) + form(el(v), el(w))
    assert form(el(u), k * el(w)) == k * form(el(u), el(w))
    # (U_i, U_j) = min(i, j)
    assert form(el(u), el(v)) == sum(a * b * min(i, j) for i, a in enumerate(u, 1) for j, b in enumerate(v, 1))


def test_split_sequence_has_zero_class():
    alg = truncated_polynomial(F5, 3)
    reg = IsoRegistry(alg)
    m, incs, projs = direct_sum([uniserial(alg, 1), uniserial(alg, 2)])
    q = ExactSequence(incs[0], projs[1])
    assert q.is_exact() and q.is_split()
    assert seq_class(q, reg).is_zero()


def test_non_exact_sequence_rejected():
    alg = truncated_polynomial(F5, 3)
    m, incs, projs = direct_sum([uniserial(alg, 1), uniserial(alg, 2)])
    with pytest.raises(GrothError):
        seq_class(ExactSequence(incs[0], projs[0]), IsoRegistry(alg))


@pytest.mark.parametrize("fld", [F2, RationalField()], ids=["GF2", "QQ"])
def test_dual_basis_truncated_polynomial(fld):
    alg = truncated_polynomial(fld, 4)
    mods = [uniserial(alg, i) for i in range(1, 5)]
    assert np.array_equal(dual_matrix(mods, local_frobenius(alg)), np.eye(4, dtype=np.int64))


def test_dual_basis_cyclic_nakayama():
    alg = cyclic_nakayama(F3, 3, 2)
    mods = [simple(alg, v) for v in alg.quiver.vertices] + [projective(alg, v) for v in alg.quiver.vertices]
    assert np.array_equal(dual_matrix(mods, socle_frobenius(alg)), np.eye(6, dtype=np.int64))


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_pairing_with_sequences_is_hom_defect(seed):
    alg = truncated_polynomial(F5, 3)
    reg = IsoRegistry(alg)
    form = HomForm(reg)
    q = random_exact_sequence(alg, np.random.default_rng(seed))
    assert q.is_exact()
    e = seq_class(q, reg, seed)
    for i in range(1, 4):
        v = uniserial(alg, i)
        direct = hom_dim(v, q.left) + hom_dim(v, q.right) - hom_dim(v, q.middle)
        assert pair(reg.register_module(v), e, form) == direct >= 0


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_split_along_summand_is_additive(seed):
    alg = quantum_plane(F5, 2)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        q = random_exact_sequence(alg, rng)
        if q.right.dim and len(decompose(q.right, seed)) >= 2:
            break
    else:
        return
    parts = decompose(q.right, seed).summands
    w1 = parts[0].inclusion
    rest, _, projs = direct_sum([s.rep for s in parts[1:]])
    w2 = ModuleMap.zero(rest, q.right)
    for s, p in zip(parts[1:], projs):
        w2 = w2.add(s.inclusion.compose(p))
    q1, q2 = split_along_summand(q, w1, w2)
    assert q1.is_exact() and q2.is_exact()
    reg = IsoRegistry(alg)
    assert seq_class(q, reg, seed) == seq_class(q1, reg, seed) + seq_class(q2, reg, seed)
