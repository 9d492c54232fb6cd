"""Pure-Python reference implementation of the integer kernels.

Everything here works on plain ints.  Golden values are (a, b) pairs meaning
a + b*phi; algebra elements are flat tuples (a0, b0, a1, b1, ...) scaled by a
common denominator chosen by the caller.  Projective points over F_p are
packed base-p integers, most significant coordinate first.
"""


def _gmul(a, b, c, d):
    bd = b * d
    return a * c + bd, a * d + b * c + bd


def _cd_product(x, y, table, scale):
    """Scaled product; None when the result leaves the scaled lattice."""
    n2 = len(x)
    out = [0] * n2
    for p, q, r, ca, cb in table:
        xa = x[2 * p]
        xb = x[2 * p + 1]
        if not (xa or xb):
            continue
        ya = y[2 * q]
        yb = y[2 * q + 1]
        if not (ya or yb):
            continue
        ua, ub = _gmul(xa, xb, ya, yb)
        va, vb = _gmul(ca, cb, ua, ub)
        out[2 * r] += va
        out[2 * r + 1] += vb
    for t in range(n2):
        if out[t] % scale:
            return None
        out[t] //= scale
    return tuple(out)


def cd_product(x, y, table, scale=1):
    """Single scaled product (public wrapper); raises if the result leaves the lattice."""
    z = _cd_product(x, y, table, scale)
    if z is None:
        raise ArithmeticError("product is not integral at this scale")
    return z


def product_table(elems, table, scale):
    """Index of x*y in ``elems`` for every ordered pair, -1 when absent."""
    index = {e: i for i, e in enumerate(elems)}
    out = []
    for x in elems:
        for y in elems:
            z = _cd_product(x, y, table, scale)
            out.append(-1 if z is None else index.get(z, -1))
    return out


def golden_inner_matrix(roots, gram2):
    """P[i][j] = roots[i]^T gram2 roots[j] as golden pairs (flat list, row-major)."""
    d = len(gram2)
    n = len(roots)
    # pre-multiply: w_j = gram2 @ roots[j]
    ws = []
    for r in roots:
        w = []
        for s in range(d):
            ta = tb = 0
            row = gram2[s]
            for t in range(d):
                ga, gb = row[t]
                if ga or gb:
                    ua, ub = _gmul(ga, gb, r[2 * t], r[2 * t + 1])
                    ta += ua
                    tb += ub
            w.append((ta, tb))
        ws.append(w)
    out = []
    for i in range(n):
        x = roots[i]
        for j in range(n):
            w = ws[j]
            ta = tb = 0
            for s in range(d):
                xa = x[2 * s]
                xb = x[2 * s + 1]
                if xa or xb:
                    ua, ub = _gmul(xa, xb, w[s][0], w[s][1])
                    ta += ua
                    tb += ub
            out.append((ta, tb))
    return out


def reflection_table(roots, gram2):
    """Cartan numbers and reflection images for every (alpha, beta) pair.

    Returns ``(cartan, images)``, flat lists indexed ``a * n + b``.
    ``cartan[a*n+b] = (na, nb, den)`` encodes 2<beta,alpha>/<alpha,alpha> =
    (na + nb*phi)/den; ``images[a*n+b]`` is the index of r_alpha(beta) in
    ``roots`` or -1 when the image is not a listed root.
    """
    n = len(roots)
    if n == 0:
        return [], []
    m = len(roots[0])
    P = golden_inner_matrix(roots, gram2)
    index = {r: i for i, r in enumerate(roots)}
    cartan = []
    images = []
    for a in range(n):
        alpha = roots[a]
        pa, pb = P[a * n + a]
        # 1/(pa + pb phi) = conj / norm
        ca, cb = pa + pb, -pb
        den = pa * pa + pa * pb - pb * pb
        for b in range(n):
            qa, qb = P[b * n + a]
            na, nb = _gmul(2 * qa, 2 * qb, ca, cb)
            cartan.append((na, nb, den))
            beta = roots[b]
            img = []
            ok = True
            for t in range(0, m, 2):
                ua, ub = _gmul(na, nb, alpha[t], alpha[t + 1])
                xa = den * beta[t] - ua
                xb = den * beta[t + 1] - ub
                if xa % den or xb % den:
                    ok = False
                    break
                img.append(xa // den)
                img.append(xb // den)
            images.append(index.get(tuple(img), -1) if ok else -1)
    return cartan, images


# finite fields ------------------------------------------------------------


def unpack(v, n, p):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = v % p
        v //= p
    return out


def pack(coords, p):
    v = 0
    for c in coords:
        v = v * p + c
    return v


def line_count(n, p):
    return (p**n - 1) // (p - 1)


def iter_lines(n, p, start=0, stop=None):
    """Packed normalized representatives (first nonzero coordinate 1), ascending.

    ``start``/``stop`` select a range of line indices in that order.
    """
    if stop is None:
        stop = line_count(n, p)
    cum, base = 0, 1
    while cum + base <= start:
        cum += base
        base *= p
    for k in range(start, stop):
        if k - cum >= base:
            cum += base
            base *= p
        yield base + (k - cum)


def isotropic_lines(gram, n, p, start=0, stop=None):
    """Representatives v with v^T gram v == 0 mod p."""
    out = []
    for v in iter_lines(n, p, start, stop):
        x = unpack(v, n, p)
        s = 0
        for i in range(n):
            xi = x[i]
            if xi:
                row = gram[i * n:(i + 1) * n]
                s += xi * sum(row[j] * x[j] for j in range(n))
        if s % p == 0:
            out.append(v)
    return out


def _reduce_into(basis, pivots, v, p):
    """Reduce v against an echelon basis; append if new.  Returns True if added."""
    v = list(v)
    for b, c in zip(basis, pivots):
        f = v[c]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, b)]
    c = next((i for i, x in enumerate(v) if x), None)
    if c is None:
        return False
    inv = pow(v[c], -1, p)
    v = [x * inv % p for x in v]
    # keep the basis fully reduced in column c
    for k, b in enumerate(basis):
        f = b[c]
        if f:
            basis[k] = [(x - f * y) % p for x, y in zip(b, v)]
    basis.append(v)
    pivots.append(c)
    return True


def stable_closure_dims(reps, maps, n, p):
    """Dimension of the smallest subspace containing each line and stable under ``maps``."""
    mats = [[m[i * n:(i + 1) * n] for i in range(n)] for m in maps]
    dims = []
    for v in reps:
        basis, pivots = [], []
        start = unpack(v, n, p)
        _reduce_into(basis, pivots, start, p)
        queue = [start]
        while queue and len(basis) < n:
            x = queue.pop()
            for M in mats:
                y = [sum(r[j] * x[j] for j in range(n)) % p for r in M]
                if _reduce_into(basis, pivots, y, p):
                    queue.append(y)
                    if len(basis) == n:
                        break
        dims.append(len(basis))
    return dims


# flag bits shared by the line scans
MIXED, CONJ_STABLE, PAIRED = 1, 2, 4


def _mixed(x, half):
    return any(x[:half]) and any(x[half:])


def fp_line_flags(M, n, p, half, start=0, stop=None):
    """Per line: MIXED if both coordinate halves are nonzero, PAIRED if M v == 0 mod p."""
    out = []
    for v in iter_lines(n, p, start, stop):
        x = unpack(v, n, p)
        f = MIXED if _mixed(x, half) else 0
        if all(sum(M[i * n + j] * x[j] for j in range(n)) % p == 0 for i in range(n)):
            f |= PAIRED
        out.append(f)
    return out


# F4 = Z[phi]/2 with code a + 2b
_F4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def _f4_apply(A, x, n):
    mul = _F4_MUL
    out = []
    for i in range(n):
        s = 0
        for j in range(n):
            s ^= mul[A[i * n + j]][x[j]]
        out.append(s)
    return out


def f4_line_flags(conj, gram, n, half, start=0, stop=None):
    """Per line of F4^n: MIXED, CONJ_STABLE (conj v = lambda v, lambda != 0), PAIRED (gram v = 0).

    ``conj`` and ``gram`` are n*n row-major F4 codes acting on column vectors.
    """
    mul = _F4_MUL
    out = []
    for v in iter_lines(n, 4, start, stop):
        x = unpack(v, n, 4)
        f = MIXED if _mixed(x, half) else 0
        cx = _f4_apply(conj, x, n)
        if any(all(cx[i] == mul[lam][x[i]] for i in range(n)) for lam in (1, 2, 3)):
            f |= CONJ_STABLE
        if not any(_f4_apply(gram, x, n)):
            f |= PAIRED
        out.append(f)
    return out
