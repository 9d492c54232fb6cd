"""Orders in composition algebras: specifications, the structure-constant check, and the catalog.

An order is given by a basis (starting with 1) of a free module over Z or
Z[phi].  It is an order exactly when every basis product and every basis
conjugate has coefficients in the ring; trace and norm are then integral too,
which is re-checked on the basis and on random ring combinations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import (
    Algebra,
    AlgebraElem,
    eisenstein_plane,
    gaussian_plane,
    hybrid_quaternions,
    octonions,
    quat,
    quaternions,
    real_line,
)
from .golden import FieldElem, GoldenInt
from .linalg import Matrix, det, hermite_normal_form, inverse

__all__ = [
    "RING_Z",
    "RING_ZPHI",
    "OrderSpec",
    "StructureTables",
    "Violation",
    "NotInOrder",
    "verify_order",
    "catalog",
    "catalog_names",
    "coordinates_of",
    "in_order",
    "element_from_coordinates",
    "icosian_basis",
]

RING_Z = "Z"
RING_ZPHI = "Z[phi]"
_HALF = Fraction(1, 2)


class Violation(ArithmeticError):
    """A structure constant, trace or norm outside the coefficient ring.

    ``i, j, k`` locate the offending coefficient: for a product b_i b_j it is
    the k-th coordinate; for a conjugate ``j`` is None; for a trace or norm
    ``j`` and ``k`` are None.
    """

    def __init__(self, kind: str, i, j, k, coefficient) -> None:
        super().__init__(f"{kind} ({i}, {j}, {k}) has coefficient {coefficient} outside the ring")
        self.kind = kind
        self.i, self.j, self.k = i, j, k
        self.coefficient = coefficient


class NotInOrder(ValueError):
    """Raised by coordinates_of; carries the fraction-field coordinates."""

    def __init__(self, coordinates) -> None:
        super().__init__("element is not in the order: coordinates " + ", ".join(map(str, coordinates)))
        self.coordinates = tuple(coordinates)


def _in_ring(x: FieldElem, ring: str) -> bool:
    return x.is_rational_integer() if ring == RING_Z else x.is_integral()


def _to_ring(x: FieldElem, ring: str):
    return int(x.a) if ring == RING_Z else x.to_golden()


@dataclass(frozen=True)
class OrderSpec:
    name: str
    ring: str
    algebra: Algebra
    basis: tuple
    # extra norm-one elements used as closure seeds when enumerating the unit shell
    unit_generators: tuple = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.ring not in (RING_Z, RING_ZPHI):
            raise ValueError(f"unknown ring {self.ring!r}")
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "unit_generators", tuple(self.unit_generators))
        if len(basis) != self.algebra.dim:
            raise ValueError(f"{self.name}: basis has {len(basis)} elements, algebra has dimension {self.algebra.dim}")
        if any(b.algebra is not self.algebra for b in basis):
            raise ValueError(f"{self.name}: basis element outside {self.algebra.name}")
        if basis[0] != self.algebra.one():
            raise ValueError(f"{self.name}: basis must start with 1")
        if not det(self.coordinate_matrix()):
            raise ValueError(f"{self.name}: basis is linearly dependent")

    @property
    def ambient(self) -> str:
        return self.algebra.kind

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinate_matrix(self) -> Matrix:
        """Columns are the basis vectors in algebra coordinates."""
        return Matrix([[b.coords[r] for b in self.basis] for r in range(self.algebra.dim)])

    def __hash__(self) -> int:
        return hash((self.name, self.ring, self.algebra.name, self.basis))


@lru_cache(maxsize=64)
def _inverse_basis(ospec: OrderSpec) -> tuple:
    return inverse(ospec.coordinate_matrix()).rows


def _field_coordinates(x: AlgebraElem, ospec: OrderSpec) -> list[FieldElem]:
    if x.algebra is not ospec.algebra:
        raise ValueError(f"element of {x.algebra.name} given for an order in {ospec.algebra.name}")
    inv = _inverse_basis(ospec)
    out = []
    for row in inv:
        s = FieldElem(0)
        for a, c in zip(row, x.coords):
            if a and c:
                s = s + FieldElem.coerce(a) * c
        out.append(s)
    return out


def coordinates_of(x: AlgebraElem, ospec: OrderSpec) -> tuple:
    """Ring coordinates of x in the basis of ``ospec``; NotInOrder otherwise."""
    cs = _field_coordinates(x, ospec)
    if not all(_in_ring(c, ospec.ring) for c in cs):
        raise NotInOrder(cs)
    return tuple(_to_ring(c, ospec.ring) for c in cs)


def in_order(x: AlgebraElem, ospec: OrderSpec) -> bool:
    return all(_in_ring(c, ospec.ring) for c in _field_coordinates(x, ospec))


def element_from_coordinates(coords: Sequence, ospec: OrderSpec) -> AlgebraElem:
    x = ospec.algebra.zero()
    for c, b in zip(coords, ospec.basis):
        if c:
            x = x + FieldElem.coerce(c) * b
    return x


@dataclass(frozen=True)
class StructureTables:
    """b_i b_j = sum_k mult[i, j][k] b_k and conj(b_i) = sum_k conj[i][k] b_k."""

    ospec: OrderSpec
    mult: dict
    conj: dict
    traces: tuple
    norms: tuple

    def __hash__(self) -> int:
        return hash(self.ospec)


def _random_coefficient(rng: random.Random, ring: str):
    if ring == RING_Z:
        return rng.randint(-3, 3)
    return GoldenInt(rng.randint(-3, 3), rng.randint(-3, 3))


def verify_order(ospec: OrderSpec, samples: int = 64, seed: int = 0) -> StructureTables:
    """Check the order criterion; raise Violation at the first failure."""
    n = ospec.rank
    ring = ospec.ring
    mult = {}
    for i in range(n):
        for j in range(n):
            cs = _field_coordinates(ospec.basis[i] * ospec.basis[j], ospec)
            for k, c in enumerate(cs):
                if not _in_ring(c, ring):
                    raise Violation("product", i, j, k, c)
            mult[i, j] = tuple(_to_ring(c, ring) for c in cs)
    conj = {}
    for i in range(n):
        cs = _field_coordinates(ospec.basis[i].conj(), ospec)
        for k, c in enumerate(cs):
            if not _in_ring(c, ring):
                raise Violation("conjugate", i, None, k, c)
        conj[i] = tuple(_to_ring(c, ring) for c in cs)
    traces, norms = [], []
    for i, b in enumerate(ospec.basis):
        t, nm = b.trace(), b.norm()
        if not _in_ring(t, ring):
            raise Violation("trace", i, None, None, t)
        if not _in_ring(nm, ring):
            raise Violation("norm", i, None, None, nm)
        traces.append(_to_ring(t, ring))
        norms.append(_to_ring(nm, ring))
    rng = random.Random(seed)
    for s in range(samples):
        x = element_from_coordinates([_random_coefficient(rng, ring) for _ in range(n)], ospec)
        t, nm = x.trace(), x.norm()
        if not _in_ring(t, ring):
            raise Violation("random trace", s, None, None, t)
        if not _in_ring(nm, ring):
            raise Violation("random norm", s, None, None, nm)
    return StructureTables(ospec, mult, conj, tuple(traces), tuple(norms))


# catalog ---------------------------------------------------------------


def icosian_basis() -> tuple:
    phi = FieldElem(0, 1)
    return (
        quat(1),
        quat(0, 1),
        quat(_HALF, _HALF, _HALF, _HALF),
        quat(-_HALF, (phi - 1) / 2, -phi / 2, 0),
    )


def _octonion_units() -> tuple:
    O = octonions()
    return tuple(O.basis(p) for p in range(8))


def _coxeter_dickson() -> OrderSpec:
    O = octonions()
    units = _octonion_units()
    h = O.element([0, _HALF, _HALF, _HALF, _HALF, 0, 0, 0])
    # work in doubled integer coordinates; stay inside (1/2) * Graves-Cayley
    # real coordinate last so that the final HNF row is exactly 1
    order = [1, 2, 3, 4, 5, 6, 7, 0]

    def scaled(x: AlgebraElem) -> list[int]:
        out = []
        for p in order:
            c = x.coords[p] * 2
            if not c.is_rational_integer():
                raise ArithmeticError("closure left (1/2) of the Graves-Cayley order")
            out.append(int(c.a))
        return out

    def unscaled(v: Sequence[int]) -> AlgebraElem:
        coords = [0] * 8
        for p, c in zip(order, v):
            coords[p] = Fraction(c, 2)
        return O.element(coords)

    rows = hermite_normal_form([scaled(u) for u in units] + [scaled(h)])
    while True:
        elems = [unscaled(r) for r in rows]
        products = [scaled(x * y) for x in elems for y in elems]
        new = hermite_normal_form(rows + products)
        if new == rows:
            break
        rows = new
    if len(rows) != 8 or rows[-1] != [0] * 7 + [2]:
        raise ArithmeticError("unexpected Coxeter-Dickson closure")
    basis = tuple(unscaled(r) for r in reversed(rows))
    return OrderSpec("coxeter_dickson", RING_Z, O, basis, unit_generators=units + (h,))


def _build(name: str) -> OrderSpec:
    if name == "integers":
        R = real_line()
        return OrderSpec(name, RING_Z, R, (R.one(),))
    if name == "gaussian":
        C = gaussian_plane()
        return OrderSpec(name, RING_Z, C, (C.one(), C.gen("i")))
    if name == "eisenstein":
        E = eisenstein_plane()
        return OrderSpec(name, RING_Z, E, (E.one(), E.gen("w")))
    if name == "hamilton":
        H = quaternions()
        return OrderSpec(name, RING_Z, H, tuple(H.basis(p) for p in range(4)))
    if name == "hybrid":
        Hw = hybrid_quaternions()
        return OrderSpec(name, RING_Z, Hw, tuple(Hw.basis(p) for p in range(4)))
    if name == "hurwitz":
        u = quat(_HALF, -_HALF, -_HALF, _HALF)
        v = quat(_HALF, _HALF, -_HALF, -_HALF)
        w = quat(_HALF, -_HALF, _HALF, -_HALF)
        return OrderSpec(name, RING_Z, quaternions(), (quat(1), u, v, w))
    if name == "graves_cayley":
        return OrderSpec(name, RING_Z, octonions(), _octonion_units())
    if name == "coxeter_dickson":
        return _coxeter_dickson()
    if name == "icosian":
        return OrderSpec(name, RING_ZPHI, quaternions(), icosian_basis())
    if name == "icosian_double":
        O = octonions()
        zero = quat()
        basis = tuple(O.element(e.coords + zero.coords) for e in icosian_basis())
        basis += tuple(O.element(zero.coords + e.coords) for e in icosian_basis())
        return OrderSpec(name, RING_ZPHI, O, basis)
    raise KeyError(f"unknown order {name!r}; known: {', '.join(_NAMES)}")


_NAMES = (
    "integers",
    "gaussian",
    "eisenstein",
    "hamilton",
    "hybrid",
    "hurwitz",
    "graves_cayley",
    "coxeter_dickson",
    "icosian",
    "icosian_double",
)


def catalog_names() -> tuple:
    return _NAMES


@lru_cache(maxsize=None)
def catalog(name: str) -> OrderSpec:
    return _build(name)
