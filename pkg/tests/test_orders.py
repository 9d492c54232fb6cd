from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncorders.algebra import octonions, quat
from ncorders.golden import FieldElem, GoldenInt
from ncorders.linalg import det
from ncorders.orders import (
    RING_ZPHI,
    NotInOrder,
    OrderSpec,
    Violation,
    catalog,
    catalog_names,
    coordinates_of,
    element_from_coordinates,
    in_order,
    verify_order,
)

half = Fraction(1, 2)


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_orders_are_orders(name):
    ospec = catalog(name)
    tables = verify_order(ospec, samples=32)
    ring_type = GoldenInt if ospec.ring == RING_ZPHI else int
    for cs in tables.mult.values():
        assert all(isinstance(c, ring_type) for c in cs)
    # structure constants reproduce the products
    for (i, j), cs in tables.mult.items():
        assert element_from_coordinates(cs, ospec) == ospec.basis[i] * ospec.basis[j]


def test_icosian_j_and_k():
    I = catalog("icosian")
    phi = GoldenInt(0, 1)
    j = coordinates_of(quat(0, 0, 1, 0), I)
    assert j == (1 - phi, 2 - phi, GoldenInt(0), 2 - 2 * phi)
    k = coordinates_of(quat(0, 0, 0, 1), I)
    assert all(isinstance(c, GoldenInt) for c in k)
    assert element_from_coordinates(k, I) == quat(0, 0, 0, 1)


def test_non_order_reports_first_violation():
    H = quat(1).algebra
    ospec = OrderSpec("bad", "Z", H, (quat(1), quat(0, 1), quat(0, 0, 1), quat(half, 0, 0, half)))
    with pytest.raises(Violation) as err:
        verify_order(ospec)
    assert FieldElem.coerce(err.value.coefficient).denominator() == 2


def test_dependent_basis_is_rejected():
    H = quat(1).algebra
    with pytest.raises(ValueError):
        OrderSpec("dep", "Z", H, (quat(1), quat(0, 1), quat(0, 0, 1), quat(half, half)))


def test_membership():
    L = catalog("hamilton")
    hurwitz = catalog("hurwitz")
    h = quat(half, half, half, half)
    assert not in_order(h, L) and in_order(h, hurwitz)
    with pytest.raises(NotInOrder) as err:
        coordinates_of(h, L)
    assert err.value.coordinates[0] == FieldElem(half)


def test_coxeter_dickson_lattice():
    CD = catalog("coxeter_dickson")
    O = octonions()
    h = O.element([0, half, half, half, half, 0, 0, 0])
    assert in_order(h, CD)
    assert all(in_order(O.basis(p), CD) for p in range(8))
    # index 16 over the Graves-Cayley integers
    assert abs(det(CD.coordinate_matrix()).a) == Fraction(1, 16)


def test_icosian_double_is_a_direct_sum():
    G0 = catalog("icosian_double")
    I = catalog("icosian")
    for b in G0.basis:
        a, c = b.halves()
        assert in_order(a, I) and in_order(c, I)


coeffs = st.lists(st.builds(GoldenInt, st.integers(-3, 3), st.integers(-3, 3)), min_size=4, max_size=4)


@settings(max_examples=300)
@given(coeffs, coeffs)
def test_icosian_products_stay_in_the_order(u, v):
    I = catalog("icosian")
    x, y = element_from_coordinates(u, I), element_from_coordinates(v, I)
    assert in_order(x * y, I)
    assert in_order(x.conj(), I)
    assert x.norm().is_integral() and x.trace().is_integral()
