"""Polar and trace Gram matrices, self-duality, discriminant groups and their quadratic forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _kernels as kernels
from . import finite
from .algebra import polar_form
from .golden import FieldElem, GoldenInt
from .linalg import Matrix, NotUnit, det, invert_over_ring, smith_normal_form
from .orders import RING_Z, OrderSpec

__all__ = [
    "GramData",
    "DiscriminantGroup",
    "DiscriminantForm",
    "FormClass",
    "polar_gram",
    "golden_self_dual",
    "trace_gram",
    "z_basis",
    "discriminant_group",
    "discriminant_form",
    "discriminant_form_classify",
    "isotropic_line_counts",
    "witt_hyperbolic_rank",
    "hyperbolic_form",
]


@dataclass(frozen=True)
class GramData:
    basis: tuple
    matrix: Matrix
    determinant: object
    ring: str

    @property
    def even(self) -> bool:
        for i in range(self.matrix.nrows):
            d = self.matrix[i, i]
            if self.ring == RING_Z:
                if d % 2:
                    return False
            elif not GoldenInt.coerce(d).a % 2 == 0 or GoldenInt.coerce(d).b % 2:
                return False
        return True

    @property
    def symmetric(self) -> bool:
        return self.matrix == self.matrix.transpose()


def polar_gram(ospec: OrderSpec) -> GramData:
    """B(b_i, b_j) = N(b_i + b_j) - N(b_i) - N(b_j) in the order's ring."""
    rows = []
    for x in ospec.basis:
        row = []
        for y in ospec.basis:
            v = polar_form(x, y)
            row.append(int(v.a) if ospec.ring == RING_Z else v.to_golden())
        rows.append(row)
    M = Matrix(rows)
    return GramData(ospec.basis, M, det(M), ospec.ring)


def golden_self_dual(ospec: OrderSpec) -> tuple[bool, Matrix | None]:
    """True with the inverse Gram when the dual module equals the order itself."""
    G = polar_gram(ospec)
    try:
        inv = invert_over_ring(G.matrix)
    except NotUnit:
        return False, None
    return True, inv


def z_basis(ospec: OrderSpec) -> tuple:
    if ospec.ring == RING_Z:
        return ospec.basis
    phi = FieldElem(0, 1)
    out = []
    for b in ospec.basis:
        out += [b, phi * b]
    return tuple(out)


def trace_gram(ospec: OrderSpec) -> GramData:
    """Integral Gram of Tr_{K/Q} B on the Z-basis (b_1, phi b_1, b_2, phi b_2, ...)."""
    zb = z_basis(ospec)
    rows = []
    for x in zb:
        row = []
        for y in zb:
            v = polar_form(x, y)
            t = v.a if ospec.ring == RING_Z else v.trace()
            if t.denominator != 1:
                raise ArithmeticError("trace form is not integral")
            row.append(int(t))
        rows.append(row)
    M = Matrix(rows)
    return GramData(zb, M, det(M), RING_Z)


@dataclass(frozen=True)
class DiscriminantGroup:
    """G^#/G for an integral Gram G, read off the Smith form U G V = D.

    A dual vector y (in basis coordinates, G y integral) has quotient
    coordinates (U G y)_i mod d_i over the nontrivial divisors; ``lifts[i]``
    is the dual vector V e_i / d_i representing the i-th generator.
    """

    gram: Matrix
    divisors: tuple
    U: Matrix
    V: Matrix
    positions: tuple
    lifts: tuple

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def coordinates(self, y: Sequence) -> list[int]:
        """Quotient coordinates of a dual vector y."""
        Gy = self.gram @ list(y)
        UGy = self.U @ Gy
        out = []
        for pos, d in zip(self.positions, self.divisors):
            c = Fraction(UGy[pos])
            if c.denominator != 1:
                raise ArithmeticError("vector is not in the dual lattice")
            out.append(int(c) % d)
        return out


def discriminant_group(G) -> DiscriminantGroup:
    M = G.matrix if isinstance(G, GramData) else G if isinstance(G, Matrix) else Matrix(G)
    snf = smith_normal_form(M)
    if any(d == 0 for d in snf.divisors):
        raise ValueError("singular Gram matrix")
    positions = tuple(i for i, d in enumerate(snf.divisors) if d != 1)
    divisors = tuple(snf.divisors[i] for i in positions)
    lifts = tuple(tuple(Fraction(snf.V[r, i], snf.divisors[i]) for r in range(M.nrows)) for i in positions)
    return DiscriminantGroup(M, divisors, snf.U, snf.V, positions, lifts)


@dataclass(frozen=True)
class DiscriminantForm:
    """q(t) = x^T G x / 2 mod Z for x = sum t_i lift_i, stored as the numerator over p."""

    p: int
    gram5: tuple

    @property
    def dimension(self) -> int:
        return len(self.gram5)

    def bilinear(self, s: Sequence[int], t: Sequence[int]) -> int:
        return finite.bilinear(self.gram5, s, t, self.p)

    def q(self, t: Sequence[int]) -> int:
        return self.bilinear(t, t) * pow(2, -1, self.p) % self.p

    def flat_gram(self) -> list[int]:
        return [x for row in self.gram5 for x in row]


def discriminant_form(D: DiscriminantGroup) -> DiscriminantForm:
    if not D.divisors or len(set(D.divisors)) != 1:
        raise ValueError("discriminant group is not elementary abelian")
    p = D.divisors[0]
    G = D.gram
    rows = []
    for ci in D.lifts:
        Gci = G @ list(ci)
        row = []
        for cj in D.lifts:
            v = sum(Fraction(a) * b for a, b in zip(Gci, cj)) * p
            if v.denominator != 1:
                raise ArithmeticError("lift pairing is not in (1/p)Z")
            row.append(int(v) % p)
        rows.append(tuple(row))
    return DiscriminantForm(p, tuple(rows))


@dataclass(frozen=True)
class FormClass:
    type: str
    isotropic_lines: int
    hyperbolic_rank: int


def isotropic_line_counts(n: int, p: int) -> tuple[int, int]:
    """Isotropic projective points of nondegenerate plus/minus forms in even dimension n."""
    m = n // 2
    plus = (p**m - 1) * (p ** (m - 1) + 1) // (p - 1)
    minus = (p**m + 1) * (p ** (m - 1) - 1) // (p - 1)
    return plus, minus


def witt_hyperbolic_rank(gram: Sequence[Sequence[int]], p: int) -> tuple[int, list]:
    """Greedy Witt decomposition: split off hyperbolic planes while an isotropic vector exists.

    Returns the number of planes and the chosen (x, y) pairs with B(x,x)=0, B(x,y)=1.
    """
    n = len(gram)
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    planes = []
    while len(W) >= 2:
        k = len(W)
        x = None
        for v in kernels.iter_lines(k, p):
            coeffs = kernels.unpack(v, k, p)
            cand = finite.combine(coeffs, W, p)
            if finite.bilinear(gram, cand, cand, p) == 0:
                x = cand
                break
        if x is None:
            break
        y = next((b for b in W if finite.bilinear(gram, x, b, p)), None)
        if y is None:
            raise ValueError("degenerate form")
        # y' = y/B(x,y) - (B(y,y)/2B(x,y)^2) x is isotropic with B(x,y') = 1
        bxy = finite.bilinear(gram, x, y, p)
        inv = pow(bxy, -1, p)
        y = [c * inv % p for c in y]
        byy = finite.bilinear(gram, y, y, p)
        half = pow(2, -1, p)
        y = [(b - byy * half * a) % p for a, b in zip(x, y)]
        planes.append((x, y))
        # orthogonal complement of span(x, y) inside span(W)
        cons = [[finite.bilinear(gram, w, x, p) for w in W], [finite.bilinear(gram, w, y, p) for w in W]]
        W = [finite.combine(c, W, p) for c in finite.nullspace(cons, len(W), p)]
    return len(planes), planes


def discriminant_form_classify(D: DiscriminantForm, workers: int = 1) -> FormClass:
    n, p = D.dimension, D.p
    if finite.rank(list(D.gram5), p) != n:
        raise ValueError("degenerate discriminant form")
    count = len(kernels.isotropic_lines(D.flat_gram(), n, p))
    plus, minus = isotropic_line_counts(n, p)
    if count == plus:
        kind = "plus"
    elif count == minus:
        kind = "minus"
    else:
        raise ArithmeticError(f"isotropic count {count} matches neither type")
    h, _ = witt_hyperbolic_rank(D.gram5, p)
    return FormClass(kind, count, h)


def hyperbolic_form(planes: int, p: int) -> DiscriminantForm:
    """Orthogonal sum of hyperbolic planes (Gram [[0,1],[1,0]] blocks)."""
    n = 2 * planes
    rows = [[0] * n for _ in range(n)]
    for k in range(planes):
        rows[2 * k][2 * k + 1] = rows[2 * k + 1][2 * k] = 1
    return DiscriminantForm(p, tuple(tuple(r) for r in rows))
