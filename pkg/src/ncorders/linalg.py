"""Exact dense linear algebra over Z, Z[phi], Q and K.

Entries may be ``int``, ``Fraction``, :class:`GoldenInt` or :class:`FieldElem`;
a matrix is treated as living over the smallest of those rings that holds all
of its entries.  Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .golden import FieldElem, GoldenInt

__all__ = [
    "Matrix",
    "SmithForm",
    "NotUnit",
    "NoSolution",
    "ring_of",
    "det",
    "adjugate",
    "inverse",
    "invert_over_ring",
    "solve",
    "solve_over_ring",
    "smith_normal_form",
    "hermite_normal_form",
    "rank_mod_p",
]

# ring tags, ordered so that max() gives the common ring
Z, ZPHI, Q, K = 0, 1, 2, 3


def _tag(x) -> int:
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, int):
        return Z
    if isinstance(x, GoldenInt):
        return ZPHI
    if isinstance(x, Fraction):
        return Z if x.denominator == 1 else Q
    if isinstance(x, FieldElem):
        return K
    raise TypeError(f"unsupported matrix entry {type(x).__name__}")


def _lift(x, tag: int):
    if tag == Z:
        return int(x)
    if tag == ZPHI:
        return GoldenInt.coerce(int(x) if isinstance(x, Fraction) else x)
    if tag == Q:
        return Fraction(x)
    return FieldElem.coerce(x)


def _field(tag: int) -> int:
    return Q if tag in (Z, Q) else K


def _zero(tag: int):
    return _lift(0, tag)


def _one(tag: int):
    return _lift(1, tag)


def _exact_div(x, y, tag: int):
    if tag == Z:
        q, r = divmod(x, y)
        if r:
            raise ArithmeticError("inexact integer division")
        return q
    if tag == ZPHI:
        return x.exact_div(y)
    return x / y


def _down(x, tag: int):
    """Bring a fraction-field value back to the ring ``tag`` (exactness checked)."""
    if tag == Z:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        return int(x)
    if tag == ZPHI:
        return FieldElem.coerce(x).to_golden()
    return x


class Matrix:
    """Immutable dense row-major matrix."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]) -> None:
        rs = tuple(tuple(r) for r in rows)
        if not rs or not rs[0]:
            raise ValueError("matrix dimensions must be positive")
        n = len(rs[0])
        if any(len(r) != n for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "_rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", n)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        zero = entries[0] - entries[0]
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._rows]

    def ring(self) -> int:
        return max(_tag(x) for r in self._rows for x in r)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows))

    def map(self, f) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self._rows])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self._rows]!r})"

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x + y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x - y for x, y in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: c * x)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other._rows))
            return Matrix([[_dot(r, c) for c in cols] for r in self._rows])
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [_dot(r, vec) for r in self._rows]

    def direct_sum(self, other: "Matrix") -> "Matrix":
        z = self[0, 0] - self[0, 0]
        top = [list(r) + [z] * other.ncols for r in self._rows]
        bottom = [[z] * self.ncols + list(r) for r in other._rows]
        return Matrix(top + bottom)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self._rows[i][j] for j in cols] for i in rows])


def _dot(r, c):
    it = iter(zip(r, c))
    x, y = next(it)
    s = x * y
    for x, y in it:
        s = s + x * y
    return s


def _as_matrix(M) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix(M)


def ring_of(M) -> int:
    return _as_matrix(M).ring()


class NotUnit(ArithmeticError):
    """The determinant is not a unit of the coefficient ring."""

    def __init__(self, determinant) -> None:
        super().__init__(f"determinant {determinant} is not a unit")
        self.det = determinant


class NoSolution(ArithmeticError):
    """Singular system, or a solution that leaves the coefficient ring."""

    def __init__(self, message: str, coordinates=None) -> None:
        super().__init__(message)
        self.coordinates = coordinates


def det(M):
    """Determinant by fraction-free (Bareiss) elimination inside the entry ring."""
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    tag = M.ring()
    A = [[_lift(x, tag) for x in r] for r in M.rows]
    n = len(A)
    sign = 1
    prev = _one(tag)
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return _zero(tag)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_div(row_i[j] * akk - aik * row_k[j], prev, tag)
            row_i[k] = _zero(tag)
        prev = akk
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def _gauss_jordan(A: list[list], B: list[list], tag: int):
    """Reduce [A | B] over the fraction field; returns X with A X = B or None if singular."""
    n = len(A)
    A = [list(r) for r in A]
    B = [list(r) for r in B]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        B[c], B[p] = B[p], B[c]
        inv = _one(tag) / A[c][c]
        A[c] = [x * inv for x in A[c]]
        B[c] = [x * inv for x in B[c]]
        for r in range(n):
            f = A[r][c]
            if r != c and f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                B[r] = [x - f * y for x, y in zip(B[r], B[c])]
    return B


def inverse(M) -> Matrix:
    """Inverse over the fraction field (Q or K)."""
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    tag = _field(M.ring())
    n = M.nrows
    A = [[_lift(x, tag) for x in r] for r in M.rows]
    I = [[_one(tag) if i == j else _zero(tag) for j in range(n)] for i in range(n)]
    X = _gauss_jordan(A, I, tag)
    if X is None:
        raise NoSolution("singular matrix")
    return Matrix(X)


def adjugate(M) -> Matrix:
    """Classical adjoint, with M @ adj(M) == det(M) * I exactly."""
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError("adjugate of a non-square matrix")
    tag = M.ring()
    n = M.nrows
    if n == 1:
        return Matrix([[_one(tag)]])
    d = det(M)
    if d:
        inv = inverse(M)
        return Matrix([[_down(d * x, tag) for x in r] for r in inv.rows])
    # singular: cofactor expansion
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = M.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            c = det(minor)
            row.append(_lift(c if (i + j) % 2 == 0 else -c, tag))
        rows.append(row)
    return Matrix(rows)


def invert_over_ring(M) -> Matrix:
    """Inverse with entries in the same ring; raises NotUnit unless det is a unit."""
    M = _as_matrix(M)
    tag = M.ring()
    d = _lift(det(M), tag)
    if tag == Z:
        unit = d in (1, -1)
        dinv = d
    elif tag == ZPHI:
        unit = d.is_unit()
        dinv = d.unit_inverse() if unit else None
    else:
        unit = bool(d)
        dinv = _one(tag) / d if unit else None
    if not unit:
        raise NotUnit(d)
    adj = adjugate(M)
    return adj.map(lambda x: x * dinv)


def solve(A, b) -> list:
    """Solution of A x = b over the fraction field."""
    A = _as_matrix(A)
    if not A.is_square():
        raise ValueError("solve needs a square matrix")
    if len(b) != A.nrows:
        raise ValueError("shape mismatch")
    tag = _field(max(A.ring(), max(_tag(x) for x in b)))
    Al = [[_lift(x, tag) for x in r] for r in A.rows]
    X = _gauss_jordan(Al, [[_lift(x, tag)] for x in b], tag)
    if X is None:
        raise NoSolution("singular system")
    return [r[0] for r in X]


def solve_over_ring(A, b, ring: str | None = None) -> list:
    """Solve A x = b and return x in the coefficient ring.

    ``ring`` is ``"Z"`` or ``"Z[phi]"``; by default it is inferred from the
    entries of ``A``.  Raises :class:`NoSolution` when the system is singular
    or when the fraction-field solution leaves the ring; in the latter case
    the exception carries the fraction-field coordinates.
    """
    A = _as_matrix(A)
    if ring is None:
        tag = A.ring()
        tag = Z if tag in (Z, Q) else ZPHI
    else:
        tag = {"Z": Z, "Z[phi]": ZPHI}[ring]
    x = solve(A, b)
    out = []
    for c in x:
        c = FieldElem.coerce(c)
        ok = c.is_rational_integer() if tag == Z else c.is_integral()
        if not ok:
            raise NoSolution(f"coordinate {c} is not in the ring", coordinates=x)
        out.append(int(c.a) if tag == Z else c.to_golden())
    return out


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V == diag(divisors) (padded with zeros to M's shape)."""

    divisors: tuple[int, ...]
    U: Matrix
    V: Matrix

    def diagonal_matrix(self, nrows: int, ncols: int) -> Matrix:
        return Matrix(
            [[self.divisors[i] if i == j and i < len(self.divisors) else 0 for j in range(ncols)] for i in range(nrows)]
        )


def smith_normal_form(M) -> SmithForm:
    """Smith normal form of an integer matrix with unimodular transforms.

    Pivots are the nonzero entries of least absolute value, ties broken by
    row-major scan order, so the transforms are reproducible.
    """
    M = _as_matrix(M)
    if M.ring() not in (Z,):
        raise TypeError("Smith normal form needs an integer matrix")
    m, n = M.shape
    A = [[int(x) for x in r] for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in A:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            # row_t += row_bad brings a non-multiple into the pivot row
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    divisors = tuple(A[i][i] for i in range(min(m, n)))
    return SmithForm(divisors, Matrix(U), Matrix(V))


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix reduced modulo the prime ``p``."""
    A = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form: a canonical basis of the row lattice.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and zero rows are dropped.
    """
    A = [[int(x) for x in r] for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    t = 0
    for c in range(ncols):
        if t == len(A):
            break
        # Euclid on column c among rows t..
        while True:
            nz = [r for r in range(t, len(A)) if A[r][c]]
            if not nz:
                break
            p = min(nz, key=lambda r: (abs(A[r][c]), r))
            A[t], A[p] = A[p], A[t]
            done = True
            for r in range(t + 1, len(A)):
                if A[r][c]:
                    q = A[r][c] // A[t][c]
                    A[r] = [x - q * y for x, y in zip(A[r], A[t])]
                    if A[r][c]:
                        done = False
            if done:
                break
        if not A[t][c]:
            continue
        if A[t][c] < 0:
            A[t] = [-x for x in A[t]]
        for r in range(t):
            q = A[r][c] // A[t][c]
            if q:
                A[r] = [x - q * y for x, y in zip(A[r], A[t])]
        t += 1
    return A[:t]
