from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arquiver.exactcore import (
    ExtensionField,
    FieldError,
    PrimeField,
    RationalField,
    field_from_json,
    field_to_json,
    root_of_unity,
)

FIELDS = [PrimeField(2), PrimeField(5), ExtensionField(2, 2, [1, 1, 1]), ExtensionField(3, 2, [1, 0, 1]), RationalField()]
IDS = ["GF2", "GF5", "GF4", "GF9", "QQ"]


def _rand(f, shape, seed):
    return f.random(shape, np.random.default_rng(seed))


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_field_axioms(f, seed):
    a, b, c = (_rand(f, 6, seed + k) for k in range(3))
    assert f.equal(f.add(a, b), f.add(b, a))
    assert f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)))
    assert f.equal(f.add(a, f.neg(a)), f.zeros(6))
    for x in a:
        if not f.is_zero(x):
            assert f.equal(f.mul(x, f.inv(x)), f.one)


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(1, 5), k=st.integers(1, 5))
def test_kernel_and_solve(f, seed, n, k):
    a = _rand(f, (n, k), seed)
    ker = f.kernel(a)
    assert ker.shape[1] == k - f.rank(a)
    assert f.iszero_matrix(f.matmul(a, ker))
    x0 = _rand(f, (k, 1), seed + 1)
    b = f.matmul(a, x0)
    x, _ = f.solve(a, b)
    assert x is not None and f.equal(f.matmul(a, x), b)


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_inverse_roundtrip(f):
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = f.random((4, 4), rng)
        if f.rank(a) < 4:
            continue
        assert f.equal(f.matmul(a, f.inverse(a)), f.eye(4))


@pytest.mark.parametrize("f", FIELDS[:4], ids=IDS[:4])
def test_vectorised_matmul_matches_rank_one_updates(f):
    from arquiver.exactcore import Field

    rng = np.random.default_rng(7)
    for _ in range(10):
        a, b = f.random((3, 6), rng), f.random((6, 5), rng)
        assert f.equal(f.matmul(a, b), Field.matmul(f, a, b))


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_min_poly_annihilates(f):
    rng = np.random.default_rng(11)
    a = f.random((4, 4), rng)
    mp = f.min_poly(a)
    assert f.iszero_matrix(f.poly_eval_matrix(mp, a))
    # a proper divisor never annihilates: the degree equals the rank of the Krylov space
    assert mp.size - 1 <= 4


def test_coprime_split_detects_distinct_eigenvalues():
    f = PrimeField(5)
    # (t - 1)^2 (t - 2): coprime parts (t-1)^2 and (t-2)
    poly = f.poly_mul(f.poly_mul(np.array([4, 1]), np.array([4, 1])), np.array([3, 1]))
    parts = f.coprime_split(poly)
    assert parts is not None
    assert sorted(p.size - 1 for p in parts) == [1, 2]
    assert f.coprime_split(f.poly_mul(np.array([4, 1]), np.array([4, 1]))) is None


def test_coprime_split_rational():
    f = RationalField()
    poly = np.array([Fraction(-2), Fraction(0), Fraction(1)], dtype=object)  # t^2 - 2, irreducible
    assert f.coprime_split(poly) is None
    poly = np.array([Fraction(-1), Fraction(0), Fraction(1)], dtype=object)  # (t-1)(t+1)
    assert f.coprime_split(poly) is not None


def test_extension_field_elements():
    f = ExtensionField(2, 2, [1, 1, 1])
    t = f.element([0, 1])
    assert f.equal(f.add(f.mul(t, t), f.add(t, f.one)), f.zero)  # t^2 + t + 1 = 0
    assert f.element(np.int64(3)) == 3  # numpy integers are encoded elements
    assert f.element(3) == 1  # Python ints are multiples of 1
    with pytest.raises(FieldError):
        f.element(np.int64(7))


def test_roots_of_unity():
    for f, m in [(PrimeField(7), 3), (PrimeField(7), 6), (ExtensionField(2, 2, [1, 1, 1]), 3), (PrimeField(3), 2)]:
        z = root_of_unity(f, m)
        assert f.power(z, m) == f.one
        assert all(f.power(z, d) != f.one for d in range(1, m))
    with pytest.raises(FieldError):
        root_of_unity(PrimeField(5), 3)
    with pytest.raises(FieldError):
        root_of_unity(RationalField(), 3)


def test_field_json_roundtrip():
    for f in FIELDS:
        assert field_from_json(field_to_json(f)) == f
    with pytest.raises(FieldError):
        field_from_json({"char": 4})
    with pytest.raises(FieldError):
        ExtensionField(2, 2, [1, 0, 1])  # t^2 + 1 = (t+1)^2 over GF(2)
