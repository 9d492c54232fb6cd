from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncorders import finite
from ncorders.algebra import polar_form
from ncorders.duality import (
    DiscriminantForm,
    discriminant_form,
    discriminant_form_classify,
    discriminant_group,
    golden_self_dual,
    hyperbolic_form,
    isotropic_line_counts,
    polar_gram,
    trace_gram,
    witt_hyperbolic_rank,
)
from ncorders.golden import FieldElem, GoldenInt
from ncorders.linalg import Matrix, solve
from ncorders.orders import catalog, in_order

PHI = GoldenInt(0, 1)


@pytest.fixture(scope="module")
def g0_trace():
    return trace_gram(catalog("icosian_double"))


def test_icosian_gram_entries():
    G = polar_gram(catalog("icosian"))
    want = [[2, 0, 1, -1], [0, 2, 1, PHI - 1], [1, 1, 2, -1], [-1, PHI - 1, -1, 2]]
    assert G.matrix == Matrix([[GoldenInt.coerce(x) for x in r] for r in want])
    assert G.determinant == GoldenInt(1, 1)
    assert G.symmetric


def test_doubled_gram_determinant():
    G = polar_gram(catalog("icosian_double"))
    assert G.determinant == GoldenInt(2, 3)
    assert G.determinant.norm() == 1


def test_icosian_dual_basis_lies_in_the_order():
    # oracle: solve B(e^i, b_j) = delta_ij for the dual basis as algebra elements
    for name in ("icosian", "icosian_double"):
        ospec = catalog(name)
        ok, inv = golden_self_dual(ospec)
        assert ok
        assert all(isinstance(x, GoldenInt) for r in inv.rows for x in r)
        alg = ospec.algebra
        es = [alg.basis(p) for p in range(alg.dim)]
        A = [[polar_form(e, b) for e in es] for b in ospec.basis]
        for i in range(ospec.rank):
            rhs = [FieldElem(int(i == j)) for j in range(ospec.rank)]
            dual = alg.element(solve(A, rhs))
            assert in_order(dual, ospec)


def test_lipschitz_is_not_self_dual():
    G = polar_gram(catalog("hamilton"))
    assert G.matrix == Matrix([[2 * int(i == j) for j in range(4)] for i in range(4)])
    assert G.determinant == 16
    assert golden_self_dual(catalog("hamilton")) == (False, None)


def test_trace_lattices(g0_trace):
    ti = trace_gram(catalog("icosian"))
    assert ti.determinant == 625 and ti.even
    assert g0_trace.determinant == 5**8 and g0_trace.even


def test_icosian_trace_discriminant_is_four_fives():
    G = trace_gram(catalog("icosian")).matrix
    D = discriminant_group(G)
    assert D.divisors == (5, 5, 5, 5)
    # oracle: det 5^4 with rank 8 - 4 mod 5 forces four invariant factors equal to 5
    assert finite.rank([list(r) for r in G.rows], 5) == 4


def test_discriminant_coordinates(g0_trace):
    D = discriminant_group(g0_trace)
    assert D.divisors == (5,) * 8
    n = g0_trace.matrix.nrows
    for i, lift in enumerate(D.lifts):
        want = [int(k == i) for k in range(8)]
        assert D.coordinates(lift) == want
        # shifting by a lattice vector does not move the class
        shifted = [c + (k % 3) - 1 for k, c in enumerate(lift)]
        assert D.coordinates(shifted) == want
    with pytest.raises(ArithmeticError):
        D.coordinates([Fraction(1, 7)] + [0] * (n - 1))


_G0 = {}


def _g0_form():
    if not _G0:
        G = trace_gram(catalog("icosian_double")).matrix
        D = discriminant_group(G)
        _G0.update(G=G, D=D, form=discriminant_form(D))
    return _G0["G"], _G0["D"], _G0["form"]


@settings(max_examples=300)
@given(st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_q_matches_exact_rational_value(t):
    G, D, form = _g0_form()
    x = [sum(Fraction(ti) * lift[r] for ti, lift in zip(t, D.lifts)) for r in range(G.nrows)]
    Q = sum(x[i] * G[i, j] * x[j] for i in range(G.nrows) for j in range(G.nrows)) / 2
    # Q lies in (1/5)Z; its class mod Z is (5Q mod 5)/5
    assert (5 * Q).denominator == 1
    assert form.q(t) == int(5 * Q) % 5


def _brute_isotropic(gram, n, p):
    count = 0
    for v in product(range(p), repeat=n):
        if any(v) and finite.bilinear(gram, v, v, p) == 0:
            count += 1
    return count // (p - 1)


@pytest.mark.parametrize("n,p", [(2, 3), (4, 3), (2, 5), (4, 5), (6, 3), (4, 7)])
def test_isotropic_counts_against_brute_force(n, p):
    plus, minus = isotropic_line_counts(n, p)
    H = hyperbolic_form(n // 2, p)
    assert _brute_isotropic(H.gram5, n, p) == plus
    # minus type: hyperbolic planes plus the norm form x^2 - a y^2, a a non-square
    a = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
    rows = [list(r) for r in hyperbolic_form(n // 2 - 1, p).gram5] if n > 2 else []
    m = len(rows)
    rows = [r + [0, 0] for r in rows] + [[0] * m + [2, 0], [0] * m + [0, (-2 * a) % p]]
    assert _brute_isotropic(rows, n, p) == minus
    assert witt_hyperbolic_rank(rows, p)[0] == n // 2 - 1


def test_four_hyperbolic_planes_mod_5():
    H = hyperbolic_form(4, 5)
    # brute force over all 5^8 vectors of q = x1 y1 + ... + x4 y4
    zeros = 0
    for v in product(range(5), repeat=8):
        if (v[0] * v[1] + v[2] * v[3] + v[4] * v[5] + v[6] * v[7]) % 5 == 0:
            zeros += 1
    assert (zeros - 1) // 4 == 19656
    cls = discriminant_form_classify(H)
    assert (cls.type, cls.isotropic_lines, cls.hyperbolic_rank) == ("plus", 19656, 4)


def test_g0_discriminant_form_is_split(g0_trace):
    form = discriminant_form(discriminant_group(g0_trace))
    cls = discriminant_form_classify(form)
    assert (cls.type, cls.isotropic_lines, cls.hyperbolic_rank) == ("plus", 19656, 4)
    assert finite.rank([list(r) for r in form.gram5], 5) == 8


def test_degenerate_form_is_rejected():
    with pytest.raises(ValueError):
        discriminant_form_classify(DiscriminantForm(5, ((1, 0), (0, 0))))
