import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from arquiver.lengthsolver import (
    LengthError,
    ProfileProblem,
    a12_problem,
    brute_force,
    chain_matches_solver,
    chain_pattern,
    cross_check_solver,
    d5_problem,
    d5_system_ls,
    named_boundary,
    smith_normal_form,
    solution_ls,
    solve_profile,
)
from arquiver.tquiver import tree_by_name

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=60, deadline=None)
@given(a=matrices)
def test_smith_normal_form(a):
    u, d, v = smith_normal_form(a)
    U, D, V, A = (sympy.Matrix(x) for x in (u, d, v, a))
    assert U * A * V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [D[i, i] for i in range(min(D.shape))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (x == 0 and y == 0) or (x != 0 and y % x == 0)


trees = st.sampled_from(["A~1,2", "A~1,1", "D~4", "D~5", "A3", "D5", "E6", "E~6"])


@settings(max_examples=40, deadline=None)
@given(name=trees, data=st.data())
def test_solver_matches_brute_force(name, data):
    tree = tree_by_name(name)
    pinned = data.draw(st.lists(st.integers(0, tree.n_vertices - 1), max_size=2, unique=True))
    boundary = {v: data.draw(st.integers(-3, 3)) for v in pinned}
    p = ProfileProblem(tree, boundary, 1, 8)
    assert cross_check_solver(p, 8) == []


def test_a12_forced_length_four():
    assert solution_ls(solve_profile(a12_problem()), 4) == [4]


def test_d5_lengths_divide_eight():
    assert solution_ls(solve_profile(d5_problem())) == [1, 2, 4, 8]
    assert d5_system_ls() == [1, 2, 4, 8]
    assert solution_ls(solve_profile(d5_problem()), 5) == [8]


def test_d5_l8_profile():
    (sol,) = [s for s in solve_profile(d5_problem()) if s.l == 8]
    assert sol.count == 1
    assert sol.particular == (1, 5, 2, 6, 7, 3)


def test_d7_chain_pattern():
    assert chain_matches_solver(7)
    assert chain_matches_solver(9)
    for x in range(8):
        c = chain_pattern(7, x)
        if c["consistent"]:
            assert not c["has_four"]
            assert c["chain"][0] == 2


def test_brute_force_counts_free_solutions():
    # the parametrised solution set has exactly as many points as the enumeration
    p = ProfileProblem(tree_by_name("A3"), {}, 1, 6)
    for s in solve_profile(p):
        assert s.count == len(brute_force(p, s.l))


def test_named_boundary():
    tree = tree_by_name("D~5")
    assert named_boundary(tree, "tips", [1, -1]) == {0: 1, 4: -1}
    assert named_boundary(tree, "0+2", [1, 1]) == {0: 1, 2: 1}
    with pytest.raises(LengthError):
        named_boundary(tree, "tips", [1])
    with pytest.raises(LengthError):
        named_boundary(tree, "nowhere", [1])


def test_problem_validation():
    with pytest.raises(LengthError):
        ProfileProblem(tree_by_name("D~5"), {}, 5, 3)
    with pytest.raises(LengthError):
        ProfileProblem(tree_by_name("D~5"), {17: 1})
    with pytest.raises(LengthError):
        ProfileProblem(tree_by_name("Ainf"))
