"""Small dense linear algebra over a prime field F_p (vectors are lists of ints)."""
from __future__ import annotations

from typing import Sequence


def matvec(M: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in M]


def bilinear(G: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int], p: int) -> int:
    return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j]) % p


def row_reduce(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(row_reduce(rows, p)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : A x = 0}."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_reduce(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(R, pivots):
            x[c] = (-row[f]) % p
        out.append(x)
    return out


def combine(coeffs: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> list[int]:
    n = len(basis[0])
    out = [0] * n
    for c, b in zip(coeffs, basis):
        if c:
            for i in range(n):
                out[i] = (out[i] + c * b[i]) % p
    return out


def normalize(v: Sequence[int], p: int) -> list[int]:
    """Scale so that the first nonzero coordinate is 1."""
    lead = next((x for x in v if x % p), 0)
    if not lead:
        return [0] * len(v)
    inv = pow(lead, -1, p)
    return [x * inv % p for x in v]
