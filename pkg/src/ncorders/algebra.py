"""Composition algebras over K = Q(sqrt 5) built by Cayley-Dickson doubling.

A doubled element is written ``a + b*l`` with ``l*l = -1`` and
``l*a = conj(a)*l``; the product is

    (a + b l)(c + d l) = (a c - conj(d) b) + (d a + b conj(c)) l.

Doubling R gives C (generator ``i``), doubling C gives H (``j``, with
``k = i j``) and doubling H gives O (``l``).  The fixed octonion basis is
``1, i, j, k, l, il, jl, kl``.  Two further rank-2 algebras are available as
doubling seeds: Q(omega) with ``omega**2 = -1 - omega`` and the cyclotomic
algebra Q(zeta_10) over K with ``zeta**2 = phi*zeta - 1``.

Coordinates are always :class:`FieldElem`; elements with coordinates in
Z[phi] are not a separate type.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .golden import FieldElem, GoldenInt

__all__ = [
    "Algebra",
    "AlgebraElem",
    "real_line",
    "gaussian_plane",
    "eisenstein_plane",
    "cyclotomic_plane",
    "quaternions",
    "hybrid_quaternions",
    "octonions",
    "algebra_by_name",
    "quat",
    "octo",
    "polar_form",
    "inner_product",
    "associator",
]

_ZERO = FieldElem(0)
_ONE = FieldElem(1)
_MONE = FieldElem(-1)


class Algebra:
    """Structure constants of a unital algebra with involution over K."""

    def __init__(self, name: str, kind: str, labels: Sequence[str], mult, conj, base: "Algebra | None" = None):
        self.name = name
        self.kind = kind  # one of R, C, H, O
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        # mult[p][q] / conj[p]: tuples of (index, FieldElem) pairs
        self.mult = tuple(tuple(tuple(t) for t in row) for row in mult)
        self.conj_table = tuple(tuple(t) for t in conj)
        self.base = base

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim})"

    def __reduce__(self):
        return (algebra_by_name, (self.name,))

    def element(self, coords: Iterable) -> "AlgebraElem":
        return AlgebraElem(self, coords)

    def zero(self) -> "AlgebraElem":
        return AlgebraElem(self, [_ZERO] * self.dim)

    def one(self) -> "AlgebraElem":
        return self.basis(0)

    def basis(self, p: int) -> "AlgebraElem":
        return AlgebraElem(self, [_ONE if q == p else _ZERO for q in range(self.dim)])

    def gen(self, label: str) -> "AlgebraElem":
        return self.basis(self.labels.index(label))

    @property
    def is_double(self) -> bool:
        return self.base is not None

    def gram(self) -> list[list[FieldElem]]:
        """Inner products <e_p, e_q> of the standard basis."""
        es = [self.basis(p) for p in range(self.dim)]
        return [[inner_product(x, y) for y in es] for x in es]


def _mul_coords(alg: Algebra, x: Sequence[FieldElem], y: Sequence[FieldElem]) -> list[FieldElem]:
    out = [_ZERO] * alg.dim
    table = alg.mult
    for p, xp in enumerate(x):
        if not xp:
            continue
        row = table[p]
        for q, yq in enumerate(y):
            if not yq:
                continue
            c = xp * yq
            for r, coef in row[q]:
                if coef == _ONE:
                    out[r] = out[r] + c
                elif coef == _MONE:
                    out[r] = out[r] - c
                else:
                    out[r] = out[r] + coef * c
    return out


def _conj_coords(alg: Algebra, x: Sequence[FieldElem]) -> list[FieldElem]:
    out = [_ZERO] * alg.dim
    for p, xp in enumerate(x):
        if xp:
            for r, coef in alg.conj_table[p]:
                out[r] = out[r] + coef * xp
    return out


class AlgebraElem:
    """An element of an :class:`Algebra` given by K-coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: Iterable) -> None:
        cs = tuple(FieldElem.coerce(c) for c in coords)
        if len(cs) != algebra.dim:
            raise ValueError(f"{algebra.name} needs {algebra.dim} coordinates, got {len(cs)}")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", cs)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElem is immutable")

    def __reduce__(self):
        return (AlgebraElem, (self.algebra, self.coords))

    def _check(self, other: "AlgebraElem") -> None:
        if other.algebra is not self.algebra:
            raise ValueError(f"algebra mismatch: {self.algebra.name} vs {other.algebra.name}")

    def __repr__(self) -> str:
        return f"AlgebraElem({self.algebra.name}, {self.render()})"

    def render(self) -> str:
        """Canonical rendering: ``(c0, c1, ...)`` with each coordinate as p/q+r/s*phi."""
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __str__(self) -> str:
        terms = []
        for c, lab in zip(self.coords, self.algebra.labels):
            if c:
                terms.append(f"({c})" + ("" if lab == "1" else "*" + lab))
        return " + ".join(terms) if terms else "0"

    def key(self) -> tuple:
        """Total-order key on exact coordinates."""
        return tuple((c.a, c.b) for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElem):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __add__(self, other: "AlgebraElem") -> "AlgebraElem":
        self._check(other)
        return AlgebraElem(self.algebra, [x + y for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other: "AlgebraElem") -> "AlgebraElem":
        self._check(other)
        return AlgebraElem(self.algebra, [x - y for x, y in zip(self.coords, other.coords)])

    def __neg__(self) -> "AlgebraElem":
        return AlgebraElem(self.algebra, [-x for x in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElem):
            self._check(other)
            return AlgebraElem(self.algebra, _mul_coords(self.algebra, self.coords, other.coords))
        try:
            c = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return AlgebraElem(self.algebra, [c * x for x in self.coords])

    def __rmul__(self, other):
        try:
            c = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return AlgebraElem(self.algebra, [c * x for x in self.coords])

    def conj(self) -> "AlgebraElem":
        return AlgebraElem(self.algebra, _conj_coords(self.algebra, self.coords))

    def _scalar(self, z: "AlgebraElem") -> FieldElem:
        if any(z.coords[1:]):
            raise ArithmeticError(f"{z} is not a scalar")
        return z.coords[0]

    def trace(self) -> FieldElem:
        return self._scalar(self + self.conj())

    def norm(self) -> FieldElem:
        return self._scalar(self * self.conj())

    def real_part(self) -> FieldElem:
        return self.trace() / 2

    def halves(self) -> tuple["AlgebraElem", "AlgebraElem"]:
        """(a, b) with self = a + b*gen, for a Cayley-Dickson double."""
        base = self.algebra.base
        if base is None:
            raise ValueError(f"{self.algebra.name} is not a Cayley-Dickson double")
        m = base.dim
        return AlgebraElem(base, self.coords[:m]), AlgebraElem(base, self.coords[m:])

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coords)


def polar_form(x: AlgebraElem, y: AlgebraElem) -> FieldElem:
    """B(x, y) = N(x + y) - N(x) - N(y)."""
    x._check(y)
    return (x + y).norm() - x.norm() - y.norm()


def inner_product(x: AlgebraElem, y: AlgebraElem) -> FieldElem:
    """<x, y> = Re(x * conj(y))."""
    x._check(y)
    return (x * y.conj()).trace() / 2


def associator(x: AlgebraElem, y: AlgebraElem, z: AlgebraElem) -> AlgebraElem:
    return (x * y) * z - x * (y * z)


# construction ----------------------------------------------------------


def _real() -> Algebra:
    return Algebra("R", "R", ["1"], [[[(0, _ONE)]]], [[(0, _ONE)]])


def _quadratic(name: str, label: str, t: FieldElem, n: FieldElem) -> Algebra:
    """K[u] with u^2 = t*u - n and conj(u) = t - u."""
    mult = [
        [[(0, _ONE)], [(1, _ONE)]],
        [[(1, _ONE)], [(0, -n), (1, t)] if t else [(0, -n)]],
    ]
    conj = [[(0, _ONE)], [(0, t), (1, _MONE)] if t else [(1, _MONE)]]
    return Algebra(name, "C", ["1", label], mult, conj)


def _double(base: Algebra, name: str, kind: str, labels: Sequence[str]) -> Algebra:
    m = base.dim
    n = 2 * m

    def split(p):
        a = [_ZERO] * m
        b = [_ZERO] * m
        (a if p < m else b)[p % m] = _ONE
        return a, b

    def sparse(v):
        return [(r, c) for r, c in enumerate(v) if c]

    mult = []
    for p in range(n):
        a, b = split(p)
        row = []
        for q in range(n):
            c, d = split(q)
            ac = _mul_coords(base, a, c)
            db = _mul_coords(base, _conj_coords(base, d), b)
            da = _mul_coords(base, d, a)
            bc = _mul_coords(base, b, _conj_coords(base, c))
            left = [x - y for x, y in zip(ac, db)]
            right = [x + y for x, y in zip(da, bc)]
            row.append(sparse(left + right))
        mult.append(row)
    conj = []
    for p in range(n):
        a, b = split(p)
        ca = _conj_coords(base, a)
        conj.append(sparse(ca + [-x for x in b]))
    return Algebra(name, kind, labels, mult, conj, base=base)


@lru_cache(maxsize=None)
def real_line() -> Algebra:
    return _real()


@lru_cache(maxsize=None)
def gaussian_plane() -> Algebra:
    return _double(real_line(), "C", "C", ["1", "i"])


@lru_cache(maxsize=None)
def eisenstein_plane() -> Algebra:
    return _quadratic("C_omega", "w", FieldElem(-1), FieldElem(1))


@lru_cache(maxsize=None)
def cyclotomic_plane() -> Algebra:
    return _quadratic("C_zeta10", "z", FieldElem(0, 1), FieldElem(1))


@lru_cache(maxsize=None)
def quaternions() -> Algebra:
    return _double(gaussian_plane(), "H", "H", ["1", "i", "j", "k"])


@lru_cache(maxsize=None)
def hybrid_quaternions() -> Algebra:
    return _double(eisenstein_plane(), "H_omega", "H", ["1", "w", "j", "wj"])


@lru_cache(maxsize=None)
def octonions() -> Algebra:
    return _double(quaternions(), "O", "O", ["1", "i", "j", "k", "l", "il", "jl", "kl"])


_BY_NAME = {
    "R": real_line,
    "C": gaussian_plane,
    "C_omega": eisenstein_plane,
    "C_zeta10": cyclotomic_plane,
    "H": quaternions,
    "H_omega": hybrid_quaternions,
    "O": octonions,
}


def algebra_by_name(name: str) -> Algebra:
    try:
        return _BY_NAME[name]()
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}") from None


def quat(w=0, x=0, y=0, z=0) -> AlgebraElem:
    """Quaternion w + x i + y j + z k over K."""
    return AlgebraElem(quaternions(), [w, x, y, z])


def octo(a: AlgebraElem, b: AlgebraElem) -> AlgebraElem:
    """Octonion a + b l from two quaternions."""
    if a.algebra is not quaternions() or b.algebra is not quaternions():
        raise ValueError("octo() takes two quaternions")
    return AlgebraElem(octonions(), a.coords + b.coords)


def golden_coords(values: Iterable[GoldenInt | int]) -> list[FieldElem]:
    return [FieldElem.coerce(v) for v in values]
