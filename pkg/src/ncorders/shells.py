"""Norm shells of orders, root-system checks and the H2/H3/H4 coordinate models."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from . import _kernels as kernels
from .algebra import AlgebraElem, cyclotomic_plane, inner_product, polar_form, quat
from .golden import FieldElem
from .linalg import Matrix, inverse
from .orders import (
    RING_Z,
    OrderSpec,
    Violation,
    catalog,
    in_order,
    verify_order,
)
from .parallel import map_chunks, split_evenly

__all__ = [
    "Shell",
    "RootReport",
    "ShellDivergence",
    "BoxCertificate",
    "enumerate_unit_shell",
    "closure_shell",
    "box_shell",
    "short_vectors",
    "verify_root_shell",
    "product_closed",
    "decagon_order",
    "h2_model",
    "h3_model",
    "h4_model",
    "model_shell",
    "halves_split",
    "mixed_projection_report",
    "verify_nc_axioms",
    "NC_AXIOMS",
    "simple_roots",
    "cartan_matrix",
    "shell_listing",
    "canonical_sorted",
    "scaled_tuple",
    "integer_table",
]

_HALF = Fraction(1, 2)
_ONE = FieldElem(1)


class ShellDivergence(RuntimeError):
    """The closure and box strategies disagree; an internal inconsistency."""


def canonical_sorted(elems) -> tuple:
    return tuple(sorted(set(elems), key=lambda x: x.key()))


@dataclass(frozen=True)
class BoxCertificate:
    """How strategy (b) bounded the search: Gram of the Z-basis and per-coordinate bounds."""

    gram: tuple
    target: int
    bounds: tuple
    candidates: int

    def lines(self) -> list[str]:
        return [
            "target " + str(self.target),
            "bounds " + " ".join(str(b) for b in self.bounds),
            "candidates " + str(self.candidates),
        ]


@dataclass(frozen=True)
class Shell:
    order: OrderSpec | None
    norm_value: FieldElem
    elements: tuple
    box: BoxCertificate | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", canonical_sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in set(self.elements)

    @property
    def algebra(self):
        return self.elements[0].algebra


# scaled integer representation -----------------------------------------


def scaled_tuple(x: AlgebraElem, scale: int) -> tuple:
    out = []
    for c in x.coords:
        a, b = c.a * scale, c.b * scale
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError(f"{x.render()} is not integral at scale {scale}")
        out.append(int(a))
        out.append(int(b))
    return tuple(out)


def from_scaled(alg, v: Sequence[int], scale: int) -> AlgebraElem:
    return alg.element([FieldElem(Fraction(v[2 * p], scale), Fraction(v[2 * p + 1], scale)) for p in range(alg.dim)])


def integer_table(alg) -> list:
    """Structure constants as (p, q, r, a, b) with coefficient a + b*phi."""
    out = []
    for p, row in enumerate(alg.mult):
        for q, terms in enumerate(row):
            for r, c in terms:
                if not c.is_integral():
                    raise ValueError(f"{alg.name} has non-integral structure constants")
                out.append((p, q, r, int(c.a), int(c.b)))
    return out


def _common_scale(elems) -> int:
    s = 1
    for x in elems:
        for c in x.coords:
            s = math.lcm(s, c.denominator())
    return s


# strategy (a): multiplicative closure ------------------------------------


def closure_shell(seeds: Sequence[AlgebraElem], scale: int | None = None) -> tuple:
    """Smallest set containing the seeds, their negatives and conjugates, closed under products."""
    alg = seeds[0].algebra
    S = set()
    for s in seeds:
        S.update((s, -s, s.conj(), -s.conj()))
    if scale is None:
        scale = _common_scale(S)
    table = integer_table(alg)
    while True:
        elems = canonical_sorted(S)
        scaled = [scaled_tuple(x, scale) for x in elems]
        idx = kernels.product_table(scaled, table, scale)
        n = len(elems)
        missing = [k for k, v in enumerate(idx) if v < 0]
        if not missing:
            return elems
        for k in missing:
            z = elems[k // n] * elems[k % n]
            S.add(z)
            scale = math.lcm(scale, _common_scale([z]))


# strategy (b): certified short vectors -------------------------------------


def _z_basis(ospec: OrderSpec) -> list:
    if ospec.ring == RING_Z:
        return list(ospec.basis)
    phi = FieldElem(0, 1)
    out = []
    for b in ospec.basis:
        out.append(b)
        out.append(phi * b)
    return out


def _z_gram(ospec: OrderSpec) -> list[list[int]]:
    """Integral positive-definite Gram: B(x,y), or Tr_{K/Q} B(x,y) for Z[phi]-orders."""
    zb = _z_basis(ospec)
    G = []
    for x in zb:
        row = []
        for y in zb:
            v = polar_form(x, y)
            t = v if ospec.ring == RING_Z else FieldElem(v.trace())
            if not t.is_rational_integer():
                raise Violation("gram", None, None, None, t)
            row.append(int(t.a))
        G.append(row)
    return G


def _fp_setup(G: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Rational Cholesky data q with Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(G)
    q = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_range(center: Fraction, radius2: Fraction) -> tuple[int, int]:
    """All integers x with (x - center)^2 <= radius2."""
    if radius2 < 0:
        return 1, 0
    r = math.isqrt(math.floor(radius2)) + 1
    lo = math.floor(center) - r
    hi = math.ceil(center) + r
    while lo <= hi and (lo - center) ** 2 > radius2:
        lo += 1
    while hi >= lo and (hi - center) ** 2 > radius2:
        hi -= 1
    return lo, hi


def _fp_enumerate(q, bound: Fraction, box, top_values) -> list[tuple[int, ...]]:
    n = len(q)
    out = []
    x = [0] * n

    def rec(i: int, rem: Fraction) -> None:
        u = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _int_range(-u, rem / q[i][i])
        lo, hi = max(lo, -box[i]), min(hi, box[i])
        values = range(lo, hi + 1)
        if i == n - 1 and top_values is not None:
            values = [v for v in top_values if lo <= v <= hi]
        for v in values:
            x[i] = v
            t = rem - q[i][i] * (v + u) ** 2
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, t)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def _fp_chunk(args):
    q, bound, box, top = args
    return _fp_enumerate(q, bound, box, top)


def short_vectors(G: Sequence[Sequence[int]], bound: int, workers: int = 1):
    """All nonzero integer c with c^T G c <= bound, plus the certified box.

    The box |c_i| <= sqrt(bound * (G^-1)_ii) is the Cauchy-Schwarz bound for a
    positive-definite form; enumeration never leaves it.
    """
    n = len(G)
    Ginv = inverse(Matrix(G))
    box = tuple(math.isqrt(math.floor(Fraction(bound) * FieldElem.coerce(Ginv[i, i]).a)) for i in range(n))
    q = _fp_setup(G)
    tops = list(range(-box[n - 1], box[n - 1] + 1))
    chunks = [(q, bound, box, t) for t in split_evenly(tops, max(1, workers))]
    found = []
    for part in map_chunks(_fp_chunk, chunks, workers):
        found.extend(part)
    found = sorted(v for v in found if any(v))
    return found, box


def box_shell(ospec: OrderSpec, norm_value=1, workers: int = 1) -> tuple[tuple, BoxCertificate]:
    """Strategy (b): elements of norm ``norm_value`` from the short vectors of the Z-form."""
    m = FieldElem.coerce(norm_value)
    G = _z_gram(ospec)
    target = 2 * m if ospec.ring == RING_Z else FieldElem((2 * m).trace())
    if not target.is_rational_integer():
        raise ValueError("norm value has no integral trace target")
    bound = int(target.a)
    vecs, box = short_vectors(G, bound, workers)
    zb = _z_basis(ospec)
    out = []
    for c in vecs:
        x = ospec.algebra.zero()
        for ci, b in zip(c, zb):
            if ci:
                x = x + ci * b
        if x.norm() == m:
            out.append(x)
    cert = BoxCertificate(tuple(tuple(r) for r in G), bound, box, len(vecs))
    return canonical_sorted(out), cert


def _seeds(ospec: OrderSpec, norm_value: FieldElem) -> list:
    seeds = [b for b in ospec.basis if b.norm() == norm_value]
    seeds += [g for g in ospec.unit_generators if g.norm() == norm_value]
    return seeds


def enumerate_unit_shell(ospec: OrderSpec, workers: int = 1) -> Shell:
    """All norm-one elements, found by closure and by box search; they must agree."""
    boxed, cert = box_shell(ospec, 1, workers)
    closed = closure_shell(_seeds(ospec, _ONE))
    if set(boxed) != set(closed):
        raise ShellDivergence(f"{ospec.name}: closure found {len(closed)} units, box search found {len(boxed)}")
    return Shell(ospec, _ONE, boxed, cert)


# root systems ----------------------------------------------------------


@dataclass(frozen=True)
class RootReport:
    cardinality: int
    centrally_symmetric: bool
    reflection_closed: bool
    involutive: bool
    cartan_values: frozenset
    cartan_in_ring: bool
    crystallographic: bool


def _reflection_data(elems: Sequence[AlgebraElem]):
    alg = elems[0].algebra
    scale = _common_scale(elems)
    roots = [scaled_tuple(x, scale) for x in elems]
    gram2 = []
    for row in alg.gram():
        r = []
        for c in row:
            c2 = 2 * c
            if not c2.is_integral():
                raise ValueError(f"{alg.name}: doubled Gram is not integral")
            r.append((int(c2.a), int(c2.b)))
        gram2.append(r)
    return kernels.reflection_table(roots, gram2)


def verify_root_shell(S) -> RootReport:
    elems = list(S.elements if isinstance(S, Shell) else canonical_sorted(S))
    if not elems:
        raise ValueError("empty shell")
    if any(not x for x in elems):
        raise ValueError("shell contains 0")
    n = len(elems)
    members = set(elems)
    symmetric = all(-x in members for x in elems)
    cartan, images = _reflection_data(elems)
    closed = all(i >= 0 for i in images)
    involutive = closed and all(images[a * n + images[a * n + b]] == b for a in range(n) for b in range(n))
    values = frozenset(FieldElem(Fraction(na, den), Fraction(nb, den)) for na, nb, den in set(cartan))
    return RootReport(
        cardinality=n,
        centrally_symmetric=symmetric,
        reflection_closed=closed,
        involutive=involutive,
        cartan_values=values,
        cartan_in_ring=all(v.is_integral() for v in values),
        crystallographic=all(v.is_rational_integer() for v in values),
    )


def product_closed(S) -> bool:
    elems = list(S.elements if isinstance(S, Shell) else S)
    scale = _common_scale(elems)
    scaled = [scaled_tuple(x, scale) for x in elems]
    return all(i >= 0 for i in kernels.product_table(scaled, integer_table(elems[0].algebra), scale))


# coordinate models ------------------------------------------------------


def decagon_order() -> OrderSpec:
    """Z[phi][zeta_10] inside Q(zeta_10); its unit shell is the H2 decagon."""
    C = cyclotomic_plane()
    return OrderSpec("decagon", "Z[phi]", C, (C.one(), C.gen("z")))


def h2_model() -> Shell:
    C = cyclotomic_plane()
    z = C.gen("z")
    x = C.one()
    roots = []
    for _ in range(10):
        roots.append(x)
        x = x * z
    if x != C.one():
        raise ArithmeticError("zeta^10 != 1")
    return Shell(decagon_order(), _ONE, roots)


def _signed(values):
    for signs in product((1, -1), repeat=len(values)):
        yield tuple(s * v for s, v in zip(signs, values))


def _even_permutations(n: int):
    for p in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
        if inv % 2 == 0:
            yield p


def h3_model() -> Shell:
    """30 pure quaternions: +-i, +-j, +-k and even permutations of (+-1, +-phi, +-phi^-1)/2."""
    phi = FieldElem(0, 1)
    roots = set()
    for p in range(3):
        for s in (1, -1):
            v = [0, 0, 0]
            v[p] = s
            roots.add(quat(0, *v))
    base = (FieldElem(_HALF), phi / 2, (phi - 1) / 2)
    for perm in _even_permutations(3):
        for vals in _signed(base):
            v = [vals[perm[t]] for t in range(3)]
            roots.add(quat(0, *v))
    return Shell(catalog("icosian"), _ONE, roots)


def h4_model() -> Shell:
    """120 quaternions: +-1 units, (+-1,+-1,+-1,+-1)/2 and even permutations of (0,+-1,+-phi,+-phi^-1)/2."""
    phi = FieldElem(0, 1)
    roots = set()
    for p in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[p] = s
            roots.add(quat(*v))
    for vals in _signed((_HALF,) * 4):
        roots.add(quat(*vals))
    base = (FieldElem(0), FieldElem(_HALF), phi / 2, (phi - 1) / 2)
    for perm in _even_permutations(4):
        for vals in _signed(base[1:]):
            full = (base[0],) + vals
            roots.add(quat(*[full[perm[t]] for t in range(4)]))
    return Shell(catalog("icosian"), _ONE, roots)


def model_shell(name: str) -> Shell:
    return {"h2": h2_model, "h3": h3_model, "h4": h4_model}[name]()


# decomposability --------------------------------------------------------


def halves_split(alg) -> tuple[list, list]:
    """The two Cayley-Dickson halves as a pair of orthogonal K-subspaces."""
    m = alg.dim // 2
    return [alg.basis(p) for p in range(m)], [alg.basis(p) for p in range(m, alg.dim)]


def mixed_projection_report(S, split) -> tuple[int, bool]:
    """(number of roots with both projections nonzero, decomposable)."""
    V1, V2 = list(split[0]), list(split[1])
    elems = list(S.elements if isinstance(S, Shell) else S)
    if not elems:
        return 0, True
    for x in V1:
        for y in V2:
            if inner_product(x, y):
                raise ValueError("split is not orthogonal")
    vs = V1 + V2
    alg = elems[0].algebra
    if len(vs) != alg.dim:
        raise ValueError("split does not span the algebra")
    inv = inverse(Matrix([[v.coords[r] for v in vs] for r in range(alg.dim)]))
    m = len(V1)
    mixed = 0
    for x in elems:
        c = inv @ list(x.coords)
        if any(c[:m]) and any(c[m:]):
            mixed += 1
    return mixed, mixed == 0


# axioms -----------------------------------------------------------------

NC_AXIOMS = (
    "order_valid",
    "finite",
    "centrally_symmetric",
    "single_norm_shell",
    "reflection_closed",
    "golden_cartan",
)


def verify_nc_axioms(ospec: OrderSpec, S) -> dict:
    elems = list(S.elements if isinstance(S, Shell) else S)
    try:
        verify_order(ospec)
        valid = True
    except Violation:
        valid = False
    norm_value = S.norm_value if isinstance(S, Shell) else (elems[0].norm() if elems else None)
    single = bool(elems) and all(x.norm() == norm_value and in_order(x, ospec) for x in elems)
    report = verify_root_shell(elems) if elems and all(elems) else None
    return {
        "order_valid": valid,
        "finite": bool(elems) and all(elems),
        "centrally_symmetric": bool(report and report.centrally_symmetric),
        "single_norm_shell": single,
        "reflection_closed": bool(report and report.reflection_closed),
        "golden_cartan": bool(report and report.cartan_in_ring),
    }


# simple roots -----------------------------------------------------------


def _functional(elems):
    """Rational weights whose linear functional vanishes on no root."""
    dim = elems[0].algebra.dim
    for attempt in range(1, 50):
        w = [Fraction(1, attempt + 7 * p + p * p * attempt + 1) for p in range(dim)]

        def f(x, w=w):
            s = FieldElem(0)
            for c, wp in zip(x.coords, w):
                if c:
                    s = s + c * wp
            return s

        if all(f(x) for x in elems):
            return f
    raise ArithmeticError("no generic functional found")


def simple_roots(S) -> tuple:
    """Positive roots alpha such that r_alpha permutes the other positive roots."""
    elems = list(S.elements if isinstance(S, Shell) else canonical_sorted(S))
    f = _functional(elems)
    n = len(elems)
    positive = {i for i, x in enumerate(elems) if f(x).sign() > 0}
    _, images = _reflection_data(elems)
    simple = []
    for a in sorted(positive):
        if all(images[a * n + b] in positive for b in positive if b != a):
            simple.append(elems[a])
    return tuple(simple)


def cartan_matrix(roots: Sequence[AlgebraElem]) -> list[list[FieldElem]]:
    return [[2 * inner_product(b, a) / inner_product(a, a) for b in roots] for a in roots]


def shell_listing(S) -> str:
    return "".join(x.render() + "\n" for x in (S.elements if isinstance(S, Shell) else canonical_sorted(S)))
