# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twins of the functions in ``_pykernels``; same signatures and results.

Coordinates are small, so fixed-width 64-bit arithmetic is used throughout.
The callers only pass values whose products stay far below 2**62.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64

DEF MAXN = 16


cdef inline i64 _pmod(i64 x, i64 p):
    cdef i64 r = x % p
    return r + p if r < 0 else r


def product_table(elems, table, i64 scale):
    cdef Py_ssize_t n = len(elems)
    if n == 0:
        return []
    cdef Py_ssize_t m = len(elems[0])
    cdef Py_ssize_t nt = len(table)
    cdef i64 *E = <i64 *> malloc(n * m * sizeof(i64))
    cdef i64 *T = <i64 *> malloc(nt * 5 * sizeof(i64))
    cdef i64 *out = <i64 *> malloc(m * sizeof(i64))
    cdef Py_ssize_t i, j, t, k
    cdef i64 xa, xb, ya, yb, ua, ub, bd
    cdef bint ok
    index = {e: i for i, e in enumerate(elems)}
    result = []
    try:
        for i in range(n):
            e = elems[i]
            for t in range(m):
                E[i * m + t] = e[t]
        for k in range(nt):
            row = table[k]
            for t in range(5):
                T[k * 5 + t] = row[t]
        for i in range(n):
            for j in range(n):
                for t in range(m):
                    out[t] = 0
                for k in range(nt):
                    xa = E[i * m + 2 * T[5 * k]]
                    xb = E[i * m + 2 * T[5 * k] + 1]
                    if xa == 0 and xb == 0:
                        continue
                    ya = E[j * m + 2 * T[5 * k + 1]]
                    yb = E[j * m + 2 * T[5 * k + 1] + 1]
                    if ya == 0 and yb == 0:
                        continue
                    bd = xb * yb
                    ua = xa * ya + bd
                    ub = xa * yb + xb * ya + bd
                    bd = T[5 * k + 4] * ub
                    out[2 * T[5 * k + 2]] += T[5 * k + 3] * ua + bd
                    out[2 * T[5 * k + 2] + 1] += T[5 * k + 3] * ub + T[5 * k + 4] * ua + bd
                ok = True
                for t in range(m):
                    if _pmod(out[t], scale):
                        ok = False
                        break
                    out[t] = out[t] // scale
                if ok:
                    key = tuple([out[t] for t in range(m)])
                    result.append(index.get(key, -1))
                else:
                    result.append(-1)
    finally:
        free(E)
        free(T)
        free(out)
    return result


def golden_inner_matrix(roots, gram2):
    cdef Py_ssize_t n = len(roots)
    cdef Py_ssize_t d = len(gram2)
    cdef i64 *R = <i64 *> malloc(max(n, 1) * 2 * d * sizeof(i64))
    cdef i64 *W = <i64 *> malloc(max(n, 1) * 2 * d * sizeof(i64))
    cdef i64 *G = <i64 *> malloc(max(d, 1) * d * 2 * sizeof(i64))
    cdef Py_ssize_t i, j, s, t
    cdef i64 ga, gb, xa, xb, ta, tb, bd
    out = []
    try:
        for i in range(n):
            r = roots[i]
            for t in range(2 * d):
                R[i * 2 * d + t] = r[t]
        for s in range(d):
            for t in range(d):
                G[(s * d + t) * 2] = gram2[s][t][0]
                G[(s * d + t) * 2 + 1] = gram2[s][t][1]
        for i in range(n):
            for s in range(d):
                ta = 0
                tb = 0
                for t in range(d):
                    ga = G[(s * d + t) * 2]
                    gb = G[(s * d + t) * 2 + 1]
                    xa = R[i * 2 * d + 2 * t]
                    xb = R[i * 2 * d + 2 * t + 1]
                    bd = gb * xb
                    ta += ga * xa + bd
                    tb += ga * xb + gb * xa + bd
                W[i * 2 * d + 2 * s] = ta
                W[i * 2 * d + 2 * s + 1] = tb
        for i in range(n):
            for j in range(n):
                ta = 0
                tb = 0
                for s in range(d):
                    xa = R[i * 2 * d + 2 * s]
                    xb = R[i * 2 * d + 2 * s + 1]
                    ga = W[j * 2 * d + 2 * s]
                    gb = W[j * 2 * d + 2 * s + 1]
                    bd = gb * xb
                    ta += ga * xa + bd
                    tb += ga * xb + gb * xa + bd
                out.append((ta, tb))
    finally:
        free(R)
        free(W)
        free(G)
    return out


def reflection_table(roots, gram2):
    cdef Py_ssize_t n = len(roots)
    if n == 0:
        return [], []
    cdef Py_ssize_t m = len(roots[0])
    P = golden_inner_matrix(roots, gram2)
    cdef i64 *R = <i64 *> malloc(n * m * sizeof(i64))
    cdef i64 *img = <i64 *> malloc(m * sizeof(i64))
    cdef Py_ssize_t a, b, t
    cdef i64 pa, pb, ca, cb, den, qa, qb, na, nb, ua, ub, xa, xb, bd
    cdef bint ok
    index = {r: i for i, r in enumerate(roots)}
    cartan = []
    images = []
    try:
        for a in range(n):
            r = roots[a]
            for t in range(m):
                R[a * m + t] = r[t]
        for a in range(n):
            pa, pb = P[a * n + a]
            ca = pa + pb
            cb = -pb
            den = pa * pa + pa * pb - pb * pb
            for b in range(n):
                qa, qb = P[b * n + a]
                bd = 2 * qb * cb
                na = 2 * qa * ca + bd
                nb = 2 * qa * cb + 2 * qb * ca + bd
                cartan.append((na, nb, den))
                ok = True
                for t in range(0, m, 2):
                    bd = nb * R[a * m + t + 1]
                    ua = na * R[a * m + t] + bd
                    ub = na * R[a * m + t + 1] + nb * R[a * m + t] + bd
                    xa = den * R[b * m + t] - ua
                    xb = den * R[b * m + t + 1] - ub
                    if _pmod(xa, den) or _pmod(xb, den):
                        ok = False
                        break
                    img[t] = xa // den
                    img[t + 1] = xb // den
                if ok:
                    images.append(index.get(tuple([img[t] for t in range(m)]), -1))
                else:
                    images.append(-1)
    finally:
        free(R)
        free(img)
    return cartan, images


cdef inline void _unpack(i64 v, int n, int p, int *x):
    cdef int i
    for i in range(n - 1, -1, -1):
        x[i] = v % p
        v //= p


cdef i64 _ipow(i64 b, int e):
    cdef i64 r = 1
    while e > 0:
        r *= b
        e -= 1
    return r


cdef i64 _line_count(int n, int p):
    return (_ipow(p, n) - 1) // (p - 1)


cdef void _line_start(i64 start, int p, i64 *cum, i64 *base):
    cum[0] = 0
    base[0] = 1
    while cum[0] + base[0] <= start:
        cum[0] += base[0]
        base[0] *= p


def isotropic_lines(gram, int n, int p, start=0, stop=None):
    cdef int G[MAXN * MAXN]
    cdef int x[MAXN]
    cdef int i, j
    cdef i64 k, k0, k1, cum, base, v, s, rs
    if n > MAXN:
        raise ValueError("dimension too large")
    for i in range(n * n):
        G[i] = _pmod(gram[i], p)
    k0 = start
    k1 = _line_count(n, p) if stop is None else stop
    _line_start(k0, p, &cum, &base)
    out = []
    for k in range(k0, k1):
        if k - cum >= base:
            cum += base
            base *= p
        v = base + (k - cum)
        _unpack(v, n, p, x)
        s = 0
        for i in range(n):
            if x[i]:
                rs = 0
                for j in range(n):
                    rs += G[i * n + j] * x[j]
                s += x[i] * rs
        if s % p == 0:
            out.append(v)
    return out


cdef int _inv_mod(int a, int p):
    cdef int r = 1
    cdef int e = p - 2
    cdef int b = a % p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef bint _reduce_into(int *basis, int *pivots, int *count, int *v, int n, int p):
    cdef int k, i, c, f, inv
    for k in range(count[0]):
        f = v[pivots[k]]
        if f:
            for i in range(n):
                v[i] = _pmod(v[i] - f * basis[k * n + i], p)
    c = -1
    for i in range(n):
        if v[i]:
            c = i
            break
    if c < 0:
        return False
    inv = _inv_mod(v[c], p)
    for i in range(n):
        v[i] = v[i] * inv % p
    for k in range(count[0]):
        f = basis[k * n + c]
        if f:
            for i in range(n):
                basis[k * n + i] = _pmod(basis[k * n + i] - f * v[i], p)
    for i in range(n):
        basis[count[0] * n + i] = v[i]
    pivots[count[0]] = c
    count[0] += 1
    return True


def stable_closure_dims(reps, maps, int n, int p):
    cdef Py_ssize_t nm = len(maps)
    cdef int *M = <int *> malloc(max(nm, 1) * n * n * sizeof(int))
    cdef int basis[MAXN * MAXN]
    cdef int pivots[MAXN]
    cdef int queue[MAXN * MAXN]
    cdef int x[MAXN]
    cdef int y[MAXN]
    cdef int w[MAXN]
    cdef int count, qlen, i, j, k
    cdef i64 s
    cdef Py_ssize_t mi
    if n > MAXN:
        raise ValueError("dimension too large")
    dims = []
    try:
        for mi in range(nm):
            mat = maps[mi]
            for i in range(n * n):
                M[mi * n * n + i] = _pmod(mat[i], p)
        for v in reps:
            count = 0
            _unpack(v, n, p, x)
            for i in range(n):
                w[i] = x[i]
            _reduce_into(basis, pivots, &count, w, n, p)
            for i in range(n):
                queue[i] = x[i]
            qlen = 1
            while qlen > 0 and count < n:
                qlen -= 1
                for i in range(n):
                    x[i] = queue[qlen * n + i]
                for mi in range(nm):
                    for i in range(n):
                        s = 0
                        for j in range(n):
                            s += M[mi * n * n + i * n + j] * x[j]
                        y[i] = s % p
                        w[i] = y[i]
                    if _reduce_into(basis, pivots, &count, w, n, p):
                        for i in range(n):
                            queue[qlen * n + i] = y[i]
                        qlen += 1
                        if count == n:
                            break
            dims.append(count)
    finally:
        free(M)
    return dims


cdef enum:
    MIXED = 1
    CONJ_STABLE = 2
    PAIRED = 4


cdef inline bint _is_mixed(int *x, int n, int half):
    cdef int i
    cdef bint lo = False, hi = False
    for i in range(half):
        if x[i]:
            lo = True
            break
    for i in range(half, n):
        if x[i]:
            hi = True
            break
    return lo and hi


def fp_line_flags(M, int n, int p, int half, start=0, stop=None):
    cdef int A[MAXN * MAXN]
    cdef int x[MAXN]
    cdef int i, j, f
    cdef i64 k, k0, k1, cum, base, v, s
    cdef bint zero
    if n > MAXN:
        raise ValueError("dimension too large")
    for i in range(n * n):
        A[i] = _pmod(M[i], p)
    k0 = start
    k1 = _line_count(n, p) if stop is None else stop
    _line_start(k0, p, &cum, &base)
    out = []
    for k in range(k0, k1):
        if k - cum >= base:
            cum += base
            base *= p
        v = base + (k - cum)
        _unpack(v, n, p, x)
        f = MIXED if _is_mixed(x, n, half) else 0
        zero = True
        for i in range(n):
            s = 0
            for j in range(n):
                s += A[i * n + j] * x[j]
            if s % p:
                zero = False
                break
        if zero:
            f |= PAIRED
        out.append(f)
    return out


cdef int F4MUL[16]
F4MUL[:] = [0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 3, 1, 0, 3, 1, 2]


def f4_line_flags(conj, gram, int n, int half, start=0, stop=None):
    cdef int C[MAXN * MAXN]
    cdef int G[MAXN * MAXN]
    cdef int x[MAXN]
    cdef int cx[MAXN]
    cdef int i, j, lam, s, f
    cdef i64 k, k0, k1, cum, base, v
    cdef bint good, paired
    if n > MAXN:
        raise ValueError("dimension too large")
    for i in range(n * n):
        C[i] = conj[i]
        G[i] = gram[i]
    k0 = start
    k1 = _line_count(n, 4) if stop is None else stop
    _line_start(k0, 4, &cum, &base)
    out = []
    for k in range(k0, k1):
        if k - cum >= base:
            cum += base
            base *= 4
        v = base + (k - cum)
        _unpack(v, n, 4, x)
        f = MIXED if _is_mixed(x, n, half) else 0
        for i in range(n):
            s = 0
            for j in range(n):
                s ^= F4MUL[C[i * n + j] * 4 + x[j]]
            cx[i] = s
        for lam in range(1, 4):
            good = True
            for i in range(n):
                if cx[i] != F4MUL[lam * 4 + x[i]]:
                    good = False
                    break
            if good:
                f |= CONJ_STABLE
                break
        paired = True
        for i in range(n):
            s = 0
            for j in range(n):
                s ^= F4MUL[G[i * n + j] * 4 + x[j]]
            if s:
                paired = False
                break
        if paired:
            f |= PAIRED
        out.append(f)
    return out
