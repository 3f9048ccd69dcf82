import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arquiver.tquiver import (
    ALPHA,
    BETA,
    GAMMA,
    IDENTITY,
    TAU,
    TQAutomorphism,
    TQError,
    ZTVertex,
    apply,
    catalog,
    compose_normalize,
    consistent_classes,
    finite_order_classification,
    fixed_point_free_scan,
    inverse,
    is_zt_arrow,
    order,
    parse_word,
    power,
    preserves_arrows,
    tree_by_name,
    valued_automorphisms,
    window,
    window_census,
    zt_successors,
)

forms = st.builds(
    TQAutomorphism,
    k=st.integers(-4, 4),
    a=st.integers(0, 1),
    b=st.integers(0, 1),
    g=st.integers(0, 1),
)
ns = st.sampled_from([5, 6, 7, 8])


def test_catalog_contents():
    names = {e.name for e in catalog("euclidean", 8)}
    assert {"A~1,1", "A~1,2", "D~4", "D~5", "E~6", "E~7", "E~8"} <= names
    for e in catalog("all", 8):
        assert e.is_connected()
        if e.is_tree and e.finite:
            assert len(e.edges) == e.n_vertices - 1 or e.name.startswith("A~1")


def test_unknown_tree_name():
    with pytest.raises(TQError):
        tree_by_name("Q7")


@pytest.mark.parametrize(
    "name,count",
    [("A5", 2), ("D4", 6), ("D5", 2), ("E6", 2), ("E7", 1), ("D~4", 24), ("D~5", 8), ("D~6", 8), ("E~6", 6)],
)
def test_tree_automorphism_counts(name, count):
    assert len(valued_automorphisms(tree_by_name(name))) == count


def test_fixed_point_free_euclidean_trees():
    assert fixed_point_free_scan("euclidean", 11) == ["A~1,2", "D~5", "D~7", "D~9", "D~11"]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_generators_preserve_arrows(n):
    for x in (ALPHA, BETA, GAMMA, TAU(1)):
        assert preserves_arrows(x, n)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_gamma_squared(n):
    assert power(GAMMA, 2, n) == TAU(4 - n)


@settings(max_examples=40, deadline=None)
@given(x=forms, y=forms, n=ns)
def test_composition_matches_evaluation(x, y, n):
    xy = compose_normalize(x, y, n)
    for v in window(n, -1, 1):
        assert apply(xy, v, n) == apply(x, apply(y, v, n), n)


@settings(max_examples=40, deadline=None)
@given(x=forms, y=forms, z=forms, n=ns)
def test_composition_associative(x, y, z, n):
    assert compose_normalize(compose_normalize(x, y, n), z, n) == compose_normalize(x, compose_normalize(y, z, n), n)


@settings(max_examples=40, deadline=None)
@given(x=forms, n=ns)
def test_inverse(x, n):
    assert compose_normalize(x, inverse(x, n), n) == IDENTITY
    assert compose_normalize(inverse(x, n), x, n) == IDENTITY


@settings(max_examples=40, deadline=None)
@given(x=forms, n=ns)
def test_automorphisms_preserve_arrows(x, n):
    for v in window(n, -1, 1):
        for w in zt_successors(v, n):
            assert is_zt_arrow(apply(x, v, n), apply(x, w, n), n)


def test_parse_word():
    assert parse_word("g g", 7) == TAU(-3)
    assert parse_word("t^2 a", 5) == TQAutomorphism(k=2, a=1)


def test_finite_order_elements_of_odd_type():
    found = finite_order_classification(7)
    assert {(x.k, x.a, x.b, x.g) for x in found} == {(0, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 1, 0)}
    assert order(GAMMA, 7) is None
    assert order(ALPHA, 7) == 2


@pytest.mark.parametrize("n", [5, 6, 7])
def test_window_census_is_exact(n):
    c = window_census(n, 4)
    assert c["exact"] and c["found"] > 0


def test_bad_vertex_rejected():
    with pytest.raises(TQError):
        apply(ALPHA, ZTVertex(0, 99), 5)


def test_consistent_classes_on_small_graphs():
    # two orbits joined by a (1,4) edge
    rep = consistent_classes([0, 1], {(0, 1): (1, 4)}, closed=[0, 1])
    assert rep["classes"] == ["A~1,1"]
    rep = consistent_classes([0, 1], {(0, 1): (2, 2)}, closed=[0, 1])
    assert "A~1,2" in rep["classes"]
    six = {(i, (i + 1) % 6): (1, 1) for i in range(6)}
    rep = consistent_classes(list(range(6)), six, closed=range(6))
    assert rep["cyclic"] and rep["classes"] == ["Ainfinf", "A~5"]
