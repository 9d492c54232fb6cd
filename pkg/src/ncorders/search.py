"""Gluing searches over the icosian double G0.

Four exhaustive scans: denominator-2 lines over F4, sqrt5-lines over F5, the
mixed half-root pairs from the H4 shell, and stable isotropic subspaces of
the trace discriminant quotient.  Lines are visited in ascending packed
order, so the first member of each class is its canonical witness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import _kernels as kernels
from . import finite
from .golden import FieldElem, GoldenInt, lambda_member
from .linalg import Matrix
from .duality import (
    DiscriminantForm,
    discriminant_form,
    discriminant_form_classify,
    discriminant_group,
    polar_gram,
    trace_gram,
    z_basis,
)
from .orders import catalog, coordinates_of, element_from_coordinates, verify_order
from .parallel import map_chunks
from .shells import enumerate_unit_shell

__all__ = [
    "NOT_MIXED",
    "CONJ_FAIL",
    "PAIRING_FAIL",
    "NORM_FAIL",
    "MULT_FAIL",
    "SQUARE_FAIL",
    "SURVIVOR",
    "FILTER_CLASSES",
    "SearchReport",
    "G0Data",
    "g0_data",
    "den2_search",
    "den2_filter_masks",
    "den2_all_orders",
    "DEN2_FILTERS",
    "sqrt5_search",
    "half_root_scan",
    "tower_search",
    "tower_data",
    "check_tower_maps",
    "f4_code",
    "f4_lift",
]

NOT_MIXED = "NotMixed"
CONJ_FAIL = "ConjFail"
PAIRING_FAIL = "PairingFail"
NORM_FAIL = "NormFail"
MULT_FAIL = "MultFail"
SQUARE_FAIL = "SquareFail"
SURVIVOR = "Survivor"
FILTER_CLASSES = (NOT_MIXED, CONJ_FAIL, PAIRING_FAIL, NORM_FAIL, MULT_FAIL, SQUARE_FAIL, SURVIVOR)


@dataclass
class SearchReport:
    total: int
    counts: dict
    survivors: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def check_partition(self) -> None:
        if sum(self.counts.values()) != self.total:
            raise ArithmeticError("class counts do not sum to the total")


# G0 data ---------------------------------------------------------------


@dataclass(frozen=True)
class G0Data:
    ospec: object
    basis: tuple
    gram: tuple  # 8x8 GoldenInt polar Gram
    conj: tuple  # conj[k][i] = k-th coordinate of conj(g_i)
    mult: dict  # (i, j) -> coordinates of g_i g_j


@lru_cache(maxsize=1)
def g0_data() -> G0Data:
    ospec = catalog("icosian_double")
    tables = verify_order(ospec)
    G = polar_gram(ospec).matrix
    n = ospec.rank
    conj = tuple(tuple(tables.conj[i][k] for i in range(n)) for k in range(n))
    return G0Data(ospec, ospec.basis, G.rows, conj, tables.mult)


def _gmul_coords(data: G0Data, x: Sequence[GoldenInt], y: Sequence[GoldenInt]) -> list[GoldenInt]:
    """Product in G0 coordinates via the structure constants."""
    n = len(x)
    out = [GoldenInt(0)] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, m in enumerate(data.mult[i, j]):
                if m:
                    out[k] = out[k] + c * m
    return out


def _pairing(data: G0Data, v: Sequence[GoldenInt], i: int) -> GoldenInt:
    """B(v, g_i) from the Gram."""
    s = GoldenInt(0)
    for j, vj in enumerate(v):
        if vj:
            s = s + vj * data.gram[j][i]
    return s


def _norm(data: G0Data, v: Sequence[GoldenInt]) -> FieldElem:
    """N(v) = B(v, v) / 2."""
    s = GoldenInt(0)
    for i, vi in enumerate(v):
        if vi:
            s = s + vi * _pairing(data, v, i)
    return s.to_field() / 2


# F4 = Z[phi]/2 -----------------------------------------------------------

_F4_LIFTS = (GoldenInt(0), GoldenInt(1), GoldenInt(0, 1), GoldenInt(1, 1))


def f4_code(x: GoldenInt) -> int:
    return (x.a % 2) | ((x.b % 2) << 1)


def f4_lift(code: int) -> GoldenInt:
    return _F4_LIFTS[code]


def _divisible(v: Sequence[GoldenInt], d: int) -> bool:
    return all(x.a % d == 0 and x.b % d == 0 for x in v)


def _f4_mult_ok(data: G0Data, v: list) -> bool:
    """(v/2) g_i and g_i (v/2) lie in G0 + Z[phi](v/2): v g = lambda v mod 2 for some lambda."""
    n = len(v)
    for i in range(n):
        g = [GoldenInt(int(k == i)) for k in range(n)]
        for w in (_gmul_coords(data, v, g), _gmul_coords(data, g, v)):
            if not any(_divisible([a - lam * b for a, b in zip(w, v)], 2) for lam in _F4_LIFTS):
                return False
    return True


def _f4_square_ok(data: G0Data, v: list) -> bool:
    """(v/2)^2 in G0 + Z[phi](v/2): v^2 - 2 mu v in 4 G0 for some mu."""
    sq = _gmul_coords(data, v, v)
    return any(_divisible([a - 2 * mu * b for a, b in zip(sq, v)], 4) for mu in _F4_LIFTS)


def _f4_norm_ok(data: G0Data, v: list) -> bool:
    return all((_norm(data, [mu * x for x in v]) / 4).is_integral() for mu in _F4_LIFTS[1:])


def _late_filters(data: G0Data, v: list) -> str:
    if not _f4_norm_ok(data, v):
        return NORM_FAIL
    if not _f4_mult_ok(data, v):
        return MULT_FAIL
    if not _f4_square_ok(data, v):
        return SQUARE_FAIL
    return SURVIVOR


def _chunks(total: int, workers: int) -> list[tuple[int, int]]:
    parts = max(1, workers)
    size, extra = divmod(total, parts)
    out, start = [], 0
    for k in range(parts):
        end = start + size + (1 if k < extra else 0)
        if end > start:
            out.append((start, end))
        start = end
    return out


def _f4_task(args):
    conj, gram, n, half, start, stop = args
    return kernels.f4_line_flags(conj, gram, n, half, start, stop)


def _fp_task(args):
    M, n, p, half, start, stop = args
    return kernels.fp_line_flags(M, n, p, half, start, stop)


def _render_line(v: int, n: int, p: int) -> str:
    return "(" + ",".join(str(c) for c in kernels.unpack(v, n, p)) + ")"


DEN2_FILTERS = (NOT_MIXED, CONJ_FAIL, PAIRING_FAIL, NORM_FAIL, MULT_FAIL, SQUARE_FAIL)


def _full_order(order: Sequence[str]) -> tuple:
    """Complete a partial filter order with the remaining filters in default order."""
    if len(set(order)) != len(order) or not set(order) <= set(DEN2_FILTERS):
        raise ValueError(f"invalid filter order {order!r}")
    rest = [f for f in DEN2_FILTERS if f not in order]
    if NOT_MIXED not in order:
        return (NOT_MIXED,) + tuple(order) + tuple(r for r in rest if r != NOT_MIXED)
    return tuple(order) + tuple(rest)


def _f4_line_data(workers: int):
    data = g0_data()
    n = len(data.basis)
    conj = [f4_code(data.conj[i][j]) for i in range(n) for j in range(n)]
    gram = [f4_code(data.gram[j][i]) for i in range(n) for j in range(n)]
    total = kernels.line_count(n, 4)
    tasks = [(conj, gram, n, n // 2, a, b) for a, b in _chunks(total, workers)]
    flags = [f for part in map_chunks(_f4_task, tasks, workers) for f in part]
    return data, n, total, flags


def _passes(data: G0Data, name: str, f: int, coords: list) -> bool:
    if name == NOT_MIXED:
        return bool(f & kernels.MIXED)
    if name == CONJ_FAIL:
        return bool(f & kernels.CONJ_STABLE)
    if name == PAIRING_FAIL:
        return bool(f & kernels.PAIRED)
    if name == NORM_FAIL:
        return _f4_norm_ok(data, coords)
    if name == MULT_FAIL:
        return _f4_mult_ok(data, coords)
    return _f4_square_ok(data, coords)


def den2_search(workers: int = 1, order: Sequence[str] = (CONJ_FAIL, PAIRING_FAIL)) -> SearchReport:
    """Classify all lines of (G0/2G0) = F4^8 by the first failing gluing filter.

    ``order`` is a sequence of filter names; filters it leaves out follow in
    the default order, with the mixedness filter first when omitted.
    """
    full = _full_order(order)
    data, n, total, flags = _f4_line_data(workers)
    counts = {c: 0 for c in FILTER_CLASSES}
    witnesses, survivors = {}, []
    for v, f in zip(kernels.iter_lines(n, 4), flags):
        coords = [f4_lift(c) for c in kernels.unpack(v, n, 4)]
        cls = next((c for c in full if not _passes(data, c, f, coords)), SURVIVOR)
        if cls == SURVIVOR:
            survivors.append(_render_line(v, n, 4))
        counts[cls] += 1
        witnesses.setdefault(cls, _render_line(v, n, 4))
    report = SearchReport(total, counts, survivors, witnesses)
    report.extra["order"] = list(full)
    report.extra["not_mixed_per_half"] = _not_mixed_lines(n, 4) // 2
    report.check_partition()
    return report


def _not_mixed_lines(n: int, q: int) -> int:
    half = n // 2
    return 2 * (q**half - 1) // (q - 1)


def _mask_task(args):
    start, stop, flags = args
    data = g0_data()
    n = len(data.basis)
    out = []
    for v, f in zip(kernels.iter_lines(n, 4, start, stop), flags):
        coords = [f4_lift(c) for c in kernels.unpack(v, n, 4)]
        out.append(sum(1 << k for k, name in enumerate(DEN2_FILTERS) if _passes(data, name, f, coords)))
    return out


def den2_filter_masks(workers: int = 1) -> dict:
    """Histogram of per-line pass masks; bit k set when filter DEN2_FILTERS[k] passes."""
    _, _, total, flags = _f4_line_data(workers)
    tasks = [(a, b, flags[a:b]) for a, b in _chunks(total, workers)]
    hist: dict = {}
    for part in map_chunks(_mask_task, tasks, workers):
        for m in part:
            hist[m] = hist.get(m, 0) + 1
    return hist


def den2_all_orders(workers: int = 1) -> dict:
    """Classification counts under every ordering of the six filters."""
    from itertools import permutations

    hist = den2_filter_masks(workers)
    out = {}
    for perm in permutations(range(len(DEN2_FILTERS))):
        counts = {c: 0 for c in FILTER_CLASSES}
        for m, c in hist.items():
            k = next((k for k in perm if not m >> k & 1), None)
            counts[SURVIVOR if k is None else DEN2_FILTERS[k]] += c
        out[tuple(DEN2_FILTERS[k] for k in perm)] = counts
    return out


def sqrt5_search(workers: int = 1) -> SearchReport:
    """Lines of G0/sqrt5 G0 = F5^8 (phi -> 3): mixedness and the polar pairing mod sqrt5."""
    data = g0_data()
    n = len(data.basis)
    half = n // 2
    p = 5
    M = [(data.gram[j][i].a + 3 * data.gram[j][i].b) % p for i in range(n) for j in range(n)]
    total = kernels.line_count(n, p)
    tasks = [(M, n, p, half, a, b) for a, b in _chunks(total, workers)]
    flags = [f for part in map_chunks(_fp_task, tasks, workers) for f in part]
    counts = {NOT_MIXED: 0, PAIRING_FAIL: 0, SURVIVOR: 0}
    witnesses, survivors = {}, []
    paired_any = 0
    for v, f in zip(kernels.iter_lines(n, p), flags):
        if f & kernels.PAIRED:
            paired_any += 1
        if not f & kernels.MIXED:
            cls = NOT_MIXED
        elif not f & kernels.PAIRED:
            cls = PAIRING_FAIL
        else:
            cls = SURVIVOR
            survivors.append(_render_line(v, n, p))
        counts[cls] += 1
        witnesses.setdefault(cls, _render_line(v, n, p))
    report = SearchReport(total, counts, survivors, witnesses)
    report.extra["mixed"] = total - counts[NOT_MIXED]
    report.extra["paired_lines"] = paired_any
    report.extra["gram_rank_mod_sqrt5"] = finite.rank([M[i * n:(i + 1) * n] for i in range(n)], p)
    report.check_partition()
    return report


# half roots ------------------------------------------------------------


@lru_cache(maxsize=1)
def _h4_coordinates() -> tuple:
    shell = enumerate_unit_shell(catalog("icosian"))
    icosian = catalog("icosian")
    return tuple(coordinates_of(x, icosian) for x in shell.elements)


def half_root_scan(mode: str = "strict") -> SearchReport:
    """Scan v = a + b*l for all pairs a, b of the H4 shell, testing v/2 for gluing.

    strict: N(v/2) must be in Z[phi].  trace: Tr N(v/2) and Tr N(phi v/2) must
    be integers, and the polar filter Tr B(v/2, g_i) in Z is counted on pairs
    and on cosets mod 2G0.
    """
    if mode not in ("strict", "trace"):
        raise ValueError("mode must be 'strict' or 'trace'")
    data = g0_data()
    H = _h4_coordinates()
    n = len(data.basis)
    half_frac = Fraction(1, 2)
    pairs = 0
    norms = set()
    cosets: dict = {}
    strict_pass = 0
    trace_norm_values = set()
    phi_trace_values = set()
    polar_raw = 0
    polar_cosets = set()
    module_survivors = 0
    first = {}
    for a in H:
        for b in H:
            v = list(a) + list(b)
            pairs += 1
            key = tuple(f4_code(x) for x in v)
            cosets[key] = cosets.get(key, 0) + 1
            nv = _norm(data, v) / 4
            norms.add(nv)
            if mode == "strict":
                if nv.is_integral():
                    strict_pass += 1
                continue
            trace_norm_values.add(nv.trace())
            phi_trace_values.add((nv * FieldElem(1, 1)).trace())
            polar_ok = all(_pairing(data, v, i).trace() % 2 == 0 for i in range(n))
            if polar_ok:
                polar_raw += 1
                polar_cosets.add(key)
                first.setdefault("polar", v)
                if lambda_member(nv):
                    module_survivors += 1
            else:
                first.setdefault("pairing", v)
    sizes = set(cosets.values())
    if sizes != {4}:
        raise ArithmeticError(f"coset sizes {sorted(sizes)} are not all 4")
    witness_v = [x for x in H[0]] + [x for x in H[0]]
    witness = element_from_coordinates(witness_v, data.ospec) * half_frac
    extra = {
        "pairs": pairs,
        "cosets": len(cosets),
        "norm_values": sorted(str(x) for x in norms),
    }
    if mode == "strict":
        counts = {NORM_FAIL: pairs - strict_pass, SURVIVOR: strict_pass}
        report = SearchReport(pairs, counts, witnesses={NORM_FAIL: witness.render()}, extra=extra)
    else:
        extra.update(
            {
                "trace_norm_values": sorted(str(x) for x in trace_norm_values),
                "phi_trace_norm_values": sorted(str(x) for x in phi_trace_values),
                "lambda_member_half": lambda_member(FieldElem(half_frac)),
                "polar_raw": polar_raw,
                "polar_cosets": len(polar_cosets),
            }
        )
        # first failing filter: polar pairing, then closure under phi
        counts = {
            PAIRING_FAIL: pairs - polar_raw,
            NORM_FAIL: polar_raw - module_survivors,
            SURVIVOR: module_survivors,
        }
        witnesses = {}
        if "pairing" in first:
            witnesses[PAIRING_FAIL] = (element_from_coordinates(first["pairing"], data.ospec) * half_frac).render()
        if "polar" in first:
            witnesses[NORM_FAIL] = (element_from_coordinates(first["polar"], data.ospec) * half_frac).render()
        report = SearchReport(pairs, counts, witnesses=witnesses, extra=extra)
    report.check_partition()
    return report


# discriminant tower ------------------------------------------------------


@dataclass(frozen=True)
class TowerData:
    group: object
    form: DiscriminantForm
    maps: dict  # name -> n*n flat matrix acting on quotient column vectors
    zmaps: dict  # name -> integral matrix on the Z-basis


def _z_coords(x, ospec) -> list[int]:
    out = []
    for c in coordinates_of(x, ospec):
        out += [c.a, c.b]
    return out


def _z_map(f, ospec) -> Matrix:
    """Integral matrix of an additive map of G0 on the Z-basis (columns = images)."""
    zb = z_basis(ospec)
    cols = [_z_coords(f(b), ospec) for b in zb]
    return Matrix([[cols[j][i] for j in range(len(zb))] for i in range(len(zb))])


@lru_cache(maxsize=1)
def tower_data() -> TowerData:
    data = g0_data()
    ospec = data.ospec
    D = discriminant_group(trace_gram(ospec))
    form = discriminant_form(D)
    p = form.p
    phi = FieldElem(0, 1)
    funcs = {"conj": lambda x: x.conj()}
    for i, g in enumerate(data.basis):
        funcs[f"left{i}"] = lambda x, g=g: g * x
        funcs[f"right{i}"] = lambda x, g=g: x * g
        funcs[f"leftconj{i}"] = lambda x, g=g: g.conj() * x
        funcs[f"rightconj{i}"] = lambda x, g=g: x * g.conj()
    funcs["phi"] = lambda x: phi * x
    funcs["sqrt5"] = lambda x: FieldElem(-1, 2) * x
    zmaps = {name: _z_map(f, ospec) for name, f in funcs.items()}
    k = len(D.lifts)
    maps = {}
    for name, M in zmaps.items():
        cols = [D.coordinates(M @ list(c)) for c in D.lifts]
        maps[name] = [cols[j][i] % p for i in range(k) for j in range(k)]
    return TowerData(D, form, maps, zmaps)


def _apply_map(M: Sequence[int], t: Sequence[int], p: int) -> list[int]:
    k = len(t)
    return [sum(M[r * k + j] * t[j] for j in range(k)) % p for r in range(k)]


def check_tower_maps(td: TowerData | None = None, seed: int = 0) -> None:
    """Raise unless every induced map is well defined and compatible with the form.

    Well defined: lift + random lattice vector, apply the integral map, reduce,
    and get the same column.  Compatible: B(gx, y) = B(x, conj(g) y),
    B(xg, y) = B(x, y conj(g)) and conj is an isometry, all mod p.
    """
    td = td or tower_data()
    D, form = td.group, td.form
    p = form.p
    k = len(D.lifts)
    N = D.gram.nrows
    rng = random.Random(seed)
    for name, M in td.zmaps.items():
        for i, c in enumerate(D.lifts):
            y = [a + rng.randint(-3, 3) for a in c]
            got = D.coordinates(M @ y)
            want = [td.maps[name][r * k + i] for r in range(k)]
            if got != want:
                raise ArithmeticError(f"induced map {name} is not well defined")
    units = [[int(r == i) for r in range(k)] for i in range(k)]
    pairs = [(f"left{i}", f"leftconj{i}") for i in range(N // 2)]
    pairs += [(f"right{i}", f"rightconj{i}") for i in range(N // 2)]
    for a, b in pairs:
        for s in units:
            gs = _apply_map(td.maps[a], s, p)
            for t in units:
                if form.bilinear(gs, t) != form.bilinear(s, _apply_map(td.maps[b], t, p)):
                    raise ArithmeticError(f"{a} is not adjoint to {b} mod {p}")
    for s in units:
        for t in units:
            cs, ct = _apply_map(td.maps["conj"], s, p), _apply_map(td.maps["conj"], t, p)
            if form.bilinear(cs, ct) != form.bilinear(s, t):
                raise ArithmeticError("conjugation is not an isometry mod p")


def _stable_maps(td: TowerData) -> list:
    names = ["conj"] + [f"left{i}" for i in range(8)] + [f"right{i}" for i in range(8)] + ["phi"]
    return [td.maps[n] for n in names]


def _closure_task(args):
    reps, maps, n, p = args
    return kernels.stable_closure_dims(reps, maps, n, p)


def _closure_subspace(v: int, maps, n: int, p: int) -> list:
    basis = [finite.normalize(kernels.unpack(v, n, p), p)]
    queue = list(basis)
    while queue:
        x = queue.pop()
        for M in maps:
            y = [sum(M[i * n + j] * x[j] for j in range(n)) % p for i in range(n)]
            if finite.rank(basis + [y], p) > len(basis):
                basis.append(y)
                queue.append(y)
    return basis


def tower_search(workers: int = 1) -> SearchReport:
    """Isotropic lines of the trace discriminant form and their stable closures."""
    td = tower_data()
    check_tower_maps(td)
    form = td.form
    n, p = form.dimension, form.p
    cls = discriminant_form_classify(form)
    reps = kernels.isotropic_lines(form.flat_gram(), n, p)
    maps = _stable_maps(td)
    step = max(1, -(-len(reps) // max(1, workers)))
    tasks = [(reps[i:i + step], maps, n, p) for i in range(0, len(reps), step)]
    dims = [d for part in map_chunks(_closure_task, tasks, workers) for d in part]
    histogram: dict = {}
    for d in dims:
        histogram[d] = histogram.get(d, 0) + 1
    anisotropic = next(
        (kernels.unpack(v, n, p) for v in kernels.iter_lines(n, p) if form.q(kernels.unpack(v, n, p))), None
    )
    candidates = []
    for v, d in zip(reps, dims):
        if d == n:
            if anisotropic is None:
                candidates.append(_render_line(v, n, p))
            continue
        sub = _closure_subspace(v, maps, n, p)
        if all(form.bilinear(x, y) == 0 for x in sub for y in sub):
            candidates.append(_render_line(v, n, p))
    counts = {"Isotropic": len(reps) - len(candidates), SURVIVOR: len(candidates)}
    identity = [3 * int(i == j) for i in range(n) for j in range(n)]
    report = SearchReport(len(reps), counts, candidates)
    report.extra.update(
        {
            "lines": kernels.line_count(n, p),
            "divisors": list(td.group.divisors),
            "form_type": cls.type,
            "hyperbolic_rank": cls.hyperbolic_rank,
            "closure_dims": {str(k): v for k, v in sorted(histogram.items())},
            "phi_scalar_3": td.maps["phi"] == identity,
            "sqrt5_zero": not any(td.maps["sqrt5"]),
            "maps_consistent": True,
        }
    )
    if reps:
        report.witnesses["Isotropic"] = _render_line(reps[0], n, p)
    if anisotropic is not None:
        report.witnesses["Anisotropic"] = "(" + ",".join(map(str, anisotropic)) + ")"
    report.check_partition()
    return report
