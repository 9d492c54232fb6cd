from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PROPERTY_EXAMPLES, goldens
from ncorders import finite
from ncorders.golden import FieldElem, GoldenInt
from ncorders.linalg import (
    Matrix,
    NoSolution,
    NotUnit,
    adjugate,
    det,
    hermite_normal_form,
    inverse,
    invert_over_ring,
    rank_mod_p,
    smith_normal_form,
    solve,
    solve_over_ring,
)


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + (-term if inv % 2 else term)
    return total


def int_matrices(max_n=4, lo=-9, hi=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def rect_matrices():
    return st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
        lambda mn: st.lists(st.lists(st.integers(-20, 20), min_size=mn[1], max_size=mn[1]), min_size=mn[0], max_size=mn[0])
    )


golden_matrices = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(goldens, min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=300)
@given(int_matrices())
def test_det_matches_leibniz_over_z(rows):
    assert det(rows) == leibniz(rows)


@settings(max_examples=300)
@given(golden_matrices)
def test_det_matches_leibniz_over_golden_ring(rows):
    assert det(rows) == leibniz(rows)


@settings(max_examples=PROPERTY_EXAMPLES)
@given(st.one_of(int_matrices(), golden_matrices))
def test_adjugate_identity(rows):
    M = Matrix(rows)
    n = M.nrows
    d = det(M)
    A = adjugate(M)
    one = rows[0][0] - rows[0][0] + 1
    D = Matrix.identity(n, one).scale(d)
    assert M @ A == D
    assert A @ M == D


@settings(max_examples=PROPERTY_EXAMPLES)
@given(rect_matrices())
def test_smith_reconstruction(rows):
    M = Matrix(rows)
    snf = smith_normal_form(M)
    m, n = M.shape
    assert snf.U @ M @ snf.V == snf.diagonal_matrix(m, n)
    assert det(snf.U) in (1, -1) and det(snf.V) in (1, -1)
    d = [x for x in snf.divisors if x]
    assert all(x > 0 for x in d)
    assert all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))


def test_smith_known_example():
    snf = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [x for x in snf.divisors] == [2, 6, 12]


@settings(max_examples=300)
@given(int_matrices(lo=-5, hi=5))
def test_inverse_over_q(rows):
    if det(rows) == 0:
        with pytest.raises(NoSolution):
            inverse(rows)
        return
    inv = inverse(rows)
    n = len(rows)
    assert Matrix(rows) @ inv == Matrix.identity(n, Fraction(1))


def test_invert_over_ring():
    # det = -1, a unit of Z[phi]
    M = Matrix([[GoldenInt(0, 1), GoldenInt(1)], [GoldenInt(1), GoldenInt(0)]])
    inv = invert_over_ring(M)
    assert M @ inv == Matrix.identity(2, GoldenInt(1))
    with pytest.raises(NotUnit):
        invert_over_ring([[2, 0], [0, 1]])


def test_solve_over_ring_reports_coordinates():
    A = [[2, 0], [0, 1]]
    assert solve_over_ring(A, [4, 3]) == [2, 3]
    with pytest.raises(NoSolution) as err:
        solve_over_ring(A, [1, 3])
    assert err.value.coordinates[0] == Fraction(1, 2)
    x = solve([[FieldElem(0, 1), 0], [0, 1]], [1, 2])
    assert x[0] == FieldElem(-1, 1)


def test_hermite_normal_form():
    H = hermite_normal_form([[2, 4], [4, 2], [6, 6]])
    assert H == [[2, 4], [0, 6]]


@settings(max_examples=300)
@given(int_matrices(lo=-6, hi=6))
def test_hermite_preserves_the_lattice(rows):
    H = hermite_normal_form(rows)
    n = len(rows)
    if det(rows) != 0:
        assert len(H) == n
        assert abs(det(H)) == abs(det(rows))
        assert all(H[i][j] == 0 for i in range(n) for j in range(i))
    # every input row is an integer combination of the HNF rows
    if H and len(H) == n:
        for r in rows:
            x = solve_over_ring(Matrix(H).transpose(), r, "Z")
            assert all(isinstance(c, int) for c in x)


@settings(max_examples=300)
@given(rect_matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_agrees_with_nullspace(rows, p):
    r = rank_mod_p(rows, p)
    assert r == finite.rank(rows, p)
    assert r + len(finite.nullspace(rows, len(rows[0]), p)) == len(rows[0])
