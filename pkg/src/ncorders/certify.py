"""Certificates for each verification step, canonical serialization and the run manifest.

A certificate is one JSON object per line, one line per top-level key, keys
sorted, compact separators and no floating-point values, so equal results
give equal bytes.  The manifest hash is SHA-256 over all certificate bytes
concatenated in check order.
"""
from __future__ import annotations

import hashlib
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from . import _kernels as kernels
from .algebra import associator, octonions, quat
from .duality import (
    discriminant_group,
    golden_self_dual,
    polar_gram,
    trace_gram,
)
from .golden import GoldenInt
from .orders import OrderSpec, Violation, catalog, catalog_names, in_order, verify_order
from .search import (
    CONJ_FAIL,
    MULT_FAIL,
    NORM_FAIL,
    NOT_MIXED,
    PAIRING_FAIL,
    SQUARE_FAIL,
    SURVIVOR,
    den2_all_orders,
    den2_search,
    half_root_scan,
    sqrt5_search,
    tower_search,
)
from .shells import (
    ShellDivergence,
    enumerate_unit_shell,
    halves_split,
    mixed_projection_report,
    model_shell,
    product_closed,
    integer_table,
    shell_listing,
    simple_roots,
    verify_nc_axioms,
    verify_root_shell,
)

__all__ = [
    "CHECK_IDS",
    "WITNESS_LEVELS",
    "Certificate",
    "RunManifest",
    "InternalInconsistency",
    "run_check",
    "run_all",
    "serialize",
    "parse",
    "ICOSIAN_BASIS",
    "CD_CONVENTION",
]

CHECK_IDS = (
    "p1-closure",
    "p2-shells",
    "p3-gram",
    "p4-den2",
    "p5-sqrt5",
    "p6-tower",
    "half-root-strict",
    "half-root-trace",
    "self-dual",
)
WITNESS_LEVELS = ("none", "summary", "full")
ICOSIAN_BASIS = "e1=1 e2=i e3=(1+i+j+k)/2 e4=(-1+(phi-1)i-phi*j)/2"
CD_CONVENTION = "(a+bl)(c+dl)=(ac-conj(d)b)+(da+b*conj(c))l"


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same quantity disagree."""


def _check_value(v):
    if isinstance(v, float):
        raise TypeError("floating values are not allowed in certificates")
    if isinstance(v, dict):
        for k, x in v.items():
            if not isinstance(k, str):
                raise TypeError("certificate keys must be strings")
            _check_value(x)
    elif isinstance(v, (list, tuple)):
        for x in v:
            _check_value(x)
    elif not (v is None or isinstance(v, (bool, int, str))):
        raise TypeError(f"unsupported certificate value {v!r}")


@dataclass
class Certificate:
    check_id: str
    parameters: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    expected: dict = field(default_factory=dict)  # key -> {"value": v, "source": text}
    status: str = "PASS"
    mismatches: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "counts": self.counts,
            "expected": self.expected,
            "mismatches": self.mismatches,
            "parameters": self.parameters,
            "status": self.status,
            "witnesses": list(self.witnesses),
        }

    def to_bytes(self) -> bytes:
        return serialize(self)

    def sha256(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()


def serialize(cert: Certificate) -> bytes:
    d = cert.as_dict()
    _check_value(d)
    lines = [json.dumps({k: d[k]}, sort_keys=True, separators=(",", ":"), ensure_ascii=True) for k in sorted(d)]
    return ("\n".join(lines) + "\n").encode("ascii")


def parse(data: bytes | str) -> Certificate:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    d = {}
    for line in text.splitlines():
        if line.strip():
            obj = json.loads(line)
            if len(obj) != 1:
                raise ValueError("each certificate line holds exactly one key")
            d.update(obj)
    return Certificate(
        check_id=d["check_id"],
        parameters=d["parameters"],
        counts=d["counts"],
        witnesses=d["witnesses"],
        expected=d["expected"],
        status=d["status"],
        mismatches=d["mismatches"],
    )


def _finish(cert: Certificate, computed: dict) -> Certificate:
    """Compare expected values against computed ones and set the status."""
    for key in sorted(cert.expected):
        want = cert.expected[key]["value"]
        got = computed.get(key)
        if got != want:
            cert.mismatches.append({"computed": got, "expected": want, "key": key})
    cert.status = "FAIL" if cert.mismatches else "PASS"
    return cert


def _expect(table: dict) -> dict:
    return {k: {"source": src, "value": v} for k, (v, src) in table.items()}


# p1 ------------------------------------------------------------------------


def _alternative_laws(trials: int, seed: int) -> int:
    """Failures of (xx)y = x(xy), (yx)x = y(xx) and (xy)x = x(yx) on random integral octonions."""
    table = integer_table(octonions())
    rng = random.Random(seed)
    mul = kernels.cd_product
    failures = 0
    for _ in range(trials):
        x = tuple(rng.randint(-4, 4) for _ in range(16))
        y = tuple(rng.randint(-4, 4) for _ in range(16))
        xx = mul(x, x, table)
        if mul(xx, y, table) != mul(x, mul(x, y, table), table):
            failures += 1
        elif mul(mul(y, x, table), x, table) != mul(y, xx, table):
            failures += 1
        elif mul(mul(x, y, table), x, table) != mul(x, mul(y, x, table), table):
            failures += 1
    return failures


def _check_p1(workers: int, witnesses: str) -> Certificate:
    counts, params = {}, {"icosian_basis": ICOSIAN_BASIS, "cayley_dickson": CD_CONVENTION}
    verified = 0
    for name in catalog_names():
        ospec = catalog(name)
        tables = verify_order(ospec)
        verified += 1
        counts[f"{name}.products"] = len(tables.mult)
        counts[f"{name}.conjugates"] = len(tables.conj)
    counts["orders_verified"] = verified
    # a span that is not closed: 1, i, j, (1+k)/2 over Z
    H = quat(1).algebra
    bad = OrderSpec("counterexample", "Z", H, (quat(1), quat(0, 1), quat(0, 0, 1), quat(Fraction(1, 2), 0, 0, Fraction(1, 2))))
    try:
        verify_order(bad)
        counts["counterexample_violations"] = 0
        violation = None
    except Violation as exc:
        counts["counterexample_violations"] = 1
        violation = f"{exc.kind} ({exc.i},{exc.j},{exc.k}) coefficient {exc.coefficient}"
    O = octonions()
    i, j, l = O.gen("i"), O.gen("j"), O.gen("l")
    witness_ok = associator(i, j, l) == 2 * O.gen("kl")
    counts["associator_witness"] = int(witness_ok)
    trials = 10000
    counts["alternative_triples"] = trials
    counts["alternative_failures"] = _alternative_laws(trials, seed=1)
    cert = Certificate("p1-closure", params, counts)
    cert.expected = _expect(
        {
            "orders_verified": (len(catalog_names()), "every catalog order satisfies the order criterion"),
            "icosian.products": (16, "icosian basis products with Z[phi] coordinates"),
            "icosian.conjugates": (4, "icosian basis conjugates with Z[phi] coordinates"),
            "icosian_double.products": (64, "icosian double closed in rank 8"),
            "counterexample_violations": (1, "half-integral span is not an order"),
            "associator_witness": (1, "[i,j,l] = 2kl"),
            "alternative_failures": (0, "octonions are alternative"),
        }
    )
    if witnesses != "none":
        cert.witnesses = [f"counterexample {violation}", "associator [i,j,l] = " + associator(i, j, l).render()]
    return _finish(cert, counts)


# p2 ------------------------------------------------------------------------

_SHELL_SIZES = {
    "integers": 2,
    "gaussian": 4,
    "eisenstein": 6,
    "hamilton": 8,
    "hybrid": 12,
    "hurwitz": 24,
    "graves_cayley": 16,
    "coxeter_dickson": 240,
    "icosian": 120,
    "icosian_double": 240,
}
_CRYSTALLOGRAPHIC = {name: name not in ("icosian", "icosian_double") for name in _SHELL_SIZES}
_MODEL_SIZES = {"h2": 10, "h3": 30, "h4": 120}


def _check_p2(workers: int, witnesses: str) -> Certificate:
    counts, params = {}, {}
    shells = {}
    for name in catalog_names():
        try:
            S = enumerate_unit_shell(catalog(name), workers)
        except ShellDivergence as exc:
            raise InternalInconsistency(str(exc)) from exc
        shells[name] = S
        r = verify_root_shell(S)
        counts[f"{name}.size"] = len(S)
        counts[f"{name}.root_checks"] = int(r.centrally_symmetric and r.reflection_closed and r.involutive and r.cartan_in_ring)
        counts[f"{name}.crystallographic"] = int(r.crystallographic)
        counts[f"{name}.product_closed"] = int(product_closed(S))
        counts[f"{name}.simple_roots"] = len(simple_roots(S))
        params[f"{name}.box"] = " ".join(S.box.lines())
    models = {}
    for m in ("h2", "h3", "h4"):
        S = model_shell(m)
        models[m] = S
        r = verify_root_shell(S)
        counts[f"{m}.size"] = len(S)
        counts[f"{m}.root_checks"] = int(r.centrally_symmetric and r.reflection_closed and r.involutive and r.cartan_in_ring)
        counts[f"{m}.crystallographic"] = int(r.crystallographic)
        if m == "h2":
            params["h2.cartan_values"] = sorted(str(v) for v in r.cartan_values)
    counts["h4_equals_icosian_shell"] = int(set(models["h4"].elements) == set(shells["icosian"].elements))
    counts["h3_in_icosian"] = int(all(in_order(x, catalog("icosian")) for x in models["h3"].elements))
    O = octonions()
    counts["icosian_double.mixed"] = mixed_projection_report(shells["icosian_double"], halves_split(O))[0]
    counts["coxeter_dickson.mixed"] = mixed_projection_report(shells["coxeter_dickson"], halves_split(O))[0]
    axioms = verify_nc_axioms(catalog("icosian_double"), shells["icosian_double"])
    counts["icosian_double.nc_axioms"] = sum(axioms.values())
    axioms = verify_nc_axioms(catalog("icosian"), shells["icosian"])
    counts["icosian.nc_axioms"] = sum(axioms.values())
    h2_cartan = {"2/1+0/1*phi", "-2/1+0/1*phi", "0/1+1/1*phi", "0/1-1/1*phi", "-1/1+1/1*phi", "1/1-1/1*phi"}
    counts["h2.cartan_set_exact"] = int(set(params["h2.cartan_values"]) == h2_cartan)
    table = {}
    for name, size in _SHELL_SIZES.items():
        table[f"{name}.size"] = (size, f"unit shell size of {name}")
        table[f"{name}.root_checks"] = (1, f"{name} shell is a root shell")
        table[f"{name}.crystallographic"] = (int(_CRYSTALLOGRAPHIC[name]), f"Cartan integers for {name}")
        table[f"{name}.product_closed"] = (1, f"{name} units closed under multiplication")
    for m, size in _MODEL_SIZES.items():
        table[f"{m}.size"] = (size, f"{m.upper()} root count")
        table[f"{m}.root_checks"] = (1, f"{m.upper()} is a root shell")
        table[f"{m}.crystallographic"] = (0, f"{m.upper()} is non-crystallographic")
    table["h4_equals_icosian_shell"] = (1, "icosian units are the 600-cell vertices")
    table["h3_in_icosian"] = (1, "H3 roots are pure icosians")
    table["icosian_double.mixed"] = (0, "unit shell of the double splits along its halves")
    table["icosian_double.nc_axioms"] = (6, "all six root-shell axioms")
    table["icosian.nc_axioms"] = (6, "all six root-shell axioms")
    table["h2.cartan_set_exact"] = (1, "H2 Cartan values are +-2, +-phi, +-(phi-1)")
    table["icosian.simple_roots"] = (4, "H4 has rank 4")
    table["icosian_double.simple_roots"] = (8, "H4+H4 has rank 8")
    table["coxeter_dickson.simple_roots"] = (8, "E8 has rank 8")
    cert = Certificate("p2-shells", params, counts)
    cert.expected = _expect(table)
    if witnesses == "summary":
        cert.witnesses = [f"{n} {shells[n].elements[0].render()}" for n in catalog_names()]
    elif witnesses == "full":
        for n in catalog_names():
            cert.witnesses += [f"{n} {line}" for line in shell_listing(shells[n]).splitlines()]
        for m in ("h2", "h3", "h4"):
            cert.witnesses += [f"{m} {line}" for line in shell_listing(models[m]).splitlines()]
    computed = dict(counts)
    return _finish(cert, computed)


# p3 / self-dual --------------------------------------------------------------

_ICOSIAN_GRAM = "[[2,0,1,-1],[0,2,1,-1+1*phi],[1,1,2,-1],[-1,-1+1*phi,-1,2]]"


def _render_matrix(M) -> str:
    def r(x):
        if isinstance(x, int):
            return str(x)
        if isinstance(x, GoldenInt):
            if x.b == 0:
                return str(x.a)
            return f"{x.a}{x.b:+d}*phi"
        return str(x)

    return "[" + ",".join("[" + ",".join(r(x) for x in row) + "]" for row in M.rows) + "]"


def _check_p3(workers: int, witnesses: str) -> Certificate:
    I, G0 = catalog("icosian"), catalog("icosian_double")
    gi, gg = polar_gram(I), polar_gram(G0)
    ti, tg = trace_gram(I), trace_gram(G0)
    params = {
        "icosian_basis": ICOSIAN_BASIS,
        "icosian.gram": _render_matrix(gi.matrix),
        "icosian.det": str(gi.determinant),
        "icosian_double.det": str(gg.determinant),
        "icosian_double.det_field_norm": gg.determinant.norm(),
    }
    block = all(
        gg.matrix[r, c] == (gi.matrix[r % 4, c % 4] if (r < 4) == (c < 4) else GoldenInt(0))
        for r in range(8)
        for c in range(8)
    )
    counts = {
        "icosian.gram_exact": int(params["icosian.gram"] == _ICOSIAN_GRAM),
        "icosian_double.block_diagonal": int(block),
        "icosian.trace_det": int(ti.determinant),
        "icosian_double.trace_det": int(tg.determinant),
        "icosian.trace_even": int(ti.even),
        "icosian_double.trace_even": int(tg.even),
        "trace_det_square": int(tg.determinant == ti.determinant**2),
        "icosian.discriminant_order": discriminant_group(ti).order,
        "icosian_double.discriminant_fives": list(discriminant_group(tg).divisors).count(5),
    }
    computed = dict(counts)
    computed.update({k: params[k] for k in ("icosian.det", "icosian_double.det", "icosian_double.det_field_norm")})
    cert = Certificate("p3-gram", params, counts)
    cert.expected = _expect(
        {
            "icosian.gram_exact": (1, "polar Gram of the icosian basis, entry by entry"),
            "icosian.det": ("1+1*phi", "det of the icosian Gram is phi^2"),
            "icosian_double.det": ("2+3*phi", "det of the doubled Gram is phi^4"),
            "icosian_double.det_field_norm": (1, "phi^4 is a unit"),
            "icosian_double.block_diagonal": (1, "doubled Gram is two icosian blocks"),
            "icosian.trace_det": (625, "trace lattice of the icosians"),
            "icosian_double.trace_det": (5**8, "trace lattice of the double"),
            "icosian.trace_even": (1, "trace lattice is even"),
            "icosian_double.trace_even": (1, "trace lattice is even"),
            "trace_det_square": (1, "block structure over Z"),
            "icosian.discriminant_order": (625, "icosian trace discriminant (Z/5)^4"),
            "icosian_double.discriminant_fives": (8, "trace discriminant (Z/5)^8"),
        }
    )
    if witnesses != "none":
        cert.witnesses = ["icosian_double.gram " + _render_matrix(gg.matrix)]
    return _finish(cert, computed)


def _check_self_dual(workers: int, witnesses: str) -> Certificate:
    results = {}
    inverses = {}
    for name in ("icosian", "icosian_double", "hamilton", "hurwitz", "gaussian"):
        ok, inv = golden_self_dual(catalog(name))
        results[name] = ok
        inverses[name] = inv
    counts = {f"{n}.self_dual": int(v) for n, v in results.items()}
    inv = inverses["icosian_double"]
    counts["icosian_double.inverse_integral"] = int(inv is not None and all(GoldenInt.coerce(x) == x for r in inv.rows for x in r))
    counts["hamilton.polar_det"] = int(polar_gram(catalog("hamilton")).determinant)
    cert = Certificate("self-dual", {"icosian_basis": ICOSIAN_BASIS}, counts)
    cert.expected = _expect(
        {
            "icosian_double.self_dual": (1, "the double equals its golden dual"),
            "icosian.self_dual": (1, "icosian Gram determinant is a unit"),
            "hamilton.self_dual": (0, "Lipschitz Gram 2I has determinant 16"),
            "hamilton.polar_det": (16, "det 2I_4"),
            "icosian_double.inverse_integral": (1, "inverse Gram has Z[phi] entries"),
        }
    )
    if witnesses != "none" and inv is not None:
        cert.witnesses = ["icosian_double.inverse_gram " + _render_matrix(inv)]
    return _finish(cert, counts)


# searches --------------------------------------------------------------------


def _report_witnesses(report, witnesses: str) -> list:
    if witnesses == "none":
        return []
    out = [f"{k} {v}" for k, v in sorted(report.witnesses.items())]
    if report.survivors:
        out += [f"Survivor {s}" for s in report.survivors]
    return out


def _check_p4(workers: int, witnesses: str) -> Certificate:
    r = den2_search(workers)
    orders = den2_all_orders(workers)
    counts = {"lines": r.total}
    counts.update(r.counts)
    counts["not_mixed_per_half"] = r.extra["not_mixed_per_half"]
    counts["orders_checked"] = len(orders)
    counts["max_survivors_any_order"] = max(c[SURVIVOR] for c in orders.values())
    if any(sum(c.values()) != r.total for c in orders.values()):
        raise InternalInconsistency("filter-order counts do not partition the lines")
    swapped = orders[(NOT_MIXED, PAIRING_FAIL, CONJ_FAIL, NORM_FAIL, MULT_FAIL, SQUARE_FAIL)]
    counts["swapped_pairing_fail"] = swapped[PAIRING_FAIL]
    cert = Certificate("p4-den2", {"field": "F4", "filters": ",".join(r.extra["order"])}, counts)
    cert.parameters["subspace_obstruction"] = r.counts[SURVIVOR] == 0
    cert.expected = _expect(
        {
            "lines": (21845, "(4^8-1)/3 projective lines"),
            NOT_MIXED: (170, "lines inside one half"),
            "not_mixed_per_half": (85, "lines per 4-dimensional half"),
            CONJ_FAIL: (16320, "first failure: conjugation stability"),
            PAIRING_FAIL: (5355, "first failure: integral pairing"),
            SURVIVOR: (0, "no denominator-2 gluing"),
            "orders_checked": (720, "all orderings of the six filters"),
            "max_survivors_any_order": (0, "no survivor under any filter ordering"),
        }
    )
    cert.witnesses = _report_witnesses(r, witnesses)
    return _finish(cert, counts)


def _check_p5(workers: int, witnesses: str) -> Certificate:
    r = sqrt5_search(workers)
    counts = {"lines": r.total, "mixed": r.extra["mixed"], "gram_rank_mod_sqrt5": r.extra["gram_rank_mod_sqrt5"]}
    counts.update(r.counts)
    cert = Certificate("p5-sqrt5", {"field": "F5", "phi_mod_sqrt5": 3}, counts)
    cert.expected = _expect(
        {
            "lines": (97656, "(5^8-1)/4 projective lines"),
            "mixed": (97344, "lines meeting both halves"),
            SURVIVOR: (0, "no sqrt5-denominator gluing"),
            "gram_rank_mod_sqrt5": (8, "polar form is nondegenerate mod sqrt5"),
        }
    )
    cert.witnesses = _report_witnesses(r, witnesses)
    return _finish(cert, counts)


def _check_half_strict(workers: int, witnesses: str) -> Certificate:
    r = half_root_scan("strict")
    counts = {"pairs": r.extra["pairs"], "cosets": r.extra["cosets"]}
    counts.update(r.counts)
    params = {"norm_values": r.extra["norm_values"]}
    computed = dict(counts, norm_values=r.extra["norm_values"])
    cert = Certificate("half-root-strict", params, counts)
    cert.expected = _expect(
        {
            "pairs": (14400, "all pairs of H4 roots"),
            "cosets": (3600, "classes mod 2G0"),
            "norm_values": (["1/2+0/1*phi"], "N((a+bl)/2) = 1/2"),
            SURVIVOR: (0, "no strict half-root gluing"),
        }
    )
    cert.witnesses = _report_witnesses(r, witnesses)
    return _finish(cert, computed)


def _check_half_trace(workers: int, witnesses: str) -> Certificate:
    r = half_root_scan("trace")
    e = r.extra
    counts = {"pairs": e["pairs"], "cosets": e["cosets"], "polar_raw": e["polar_raw"], "polar_cosets": e["polar_cosets"]}
    counts.update(r.counts)
    params = {
        "trace_norm_values": e["trace_norm_values"],
        "phi_trace_norm_values": e["phi_trace_norm_values"],
        "lambda_member_half": e["lambda_member_half"],
    }
    computed = dict(counts, **params)
    cert = Certificate("half-root-trace", params, counts)
    cert.expected = _expect(
        {
            "pairs": (14400, "all pairs of H4 roots"),
            "trace_norm_values": (["1"], "Tr N(v/2) = 1"),
            "phi_trace_norm_values": (["3/2"], "Tr N(phi v/2) = 3/2"),
            "lambda_member_half": (False, "1/2 is not in the trace-norm lattice"),
            "polar_raw": (324, "pairs passing the trace polar filter"),
            "polar_cosets": (81, "cosets passing the trace polar filter"),
            SURVIVOR: (0, "no trace-integral module survivor"),
        }
    )
    cert.witnesses = _report_witnesses(r, witnesses)
    return _finish(cert, computed)


def _check_p6(workers: int, witnesses: str) -> Certificate:
    r = tower_search(workers)
    e = r.extra
    counts = {
        "lines": e["lines"],
        "isotropic": r.total,
        "closure_dim_8": e["closure_dims"].get("8", 0),
        "candidates": r.counts[SURVIVOR],
        "hyperbolic_rank": e["hyperbolic_rank"],
        "quotient_fives": e["divisors"].count(5),
        "quotient_rank": len(e["divisors"]),
        "phi_scalar_3": int(e["phi_scalar_3"]),
        "sqrt5_zero": int(e["sqrt5_zero"]),
        "maps_consistent": int(e["maps_consistent"]),
    }
    params = {"form_type": e["form_type"], "closure_dims": e["closure_dims"]}
    computed = dict(counts, form_type=e["form_type"])
    cert = Certificate("p6-tower", params, counts)
    cert.expected = _expect(
        {
            "lines": (97656, "projective lines of the quotient"),
            "quotient_fives": (8, "quotient (Z/5)^8"),
            "quotient_rank": (8, "quotient (Z/5)^8"),
            "form_type": ("plus", "split orthogonal type"),
            "isotropic": (19656, "isotropic lines of the plus-type form"),
            "hyperbolic_rank": (4, "Witt index 4"),
            "closure_dim_8": (19656, "every stable closure is the whole quotient"),
            "candidates": (0, "no stable isotropic gluing subspace"),
            "phi_scalar_3": (1, "phi acts as 3"),
            "sqrt5_zero": (1, "sqrt5 annihilates the quotient"),
            "maps_consistent": (1, "induced maps are well defined"),
        }
    )
    cert.witnesses = _report_witnesses(r, witnesses)
    return _finish(cert, computed)


_CHECKS = {
    "p1-closure": _check_p1,
    "p2-shells": _check_p2,
    "p3-gram": _check_p3,
    "p4-den2": _check_p4,
    "p5-sqrt5": _check_p5,
    "p6-tower": _check_p6,
    "half-root-strict": _check_half_strict,
    "half-root-trace": _check_half_trace,
    "self-dual": _check_self_dual,
}


def run_check(check_id: str, workers: int = 1, witnesses: str = "summary") -> Certificate:
    if check_id not in _CHECKS:
        raise KeyError(f"unknown check {check_id!r}")
    if witnesses not in WITNESS_LEVELS:
        raise ValueError(f"witness level must be one of {', '.join(WITNESS_LEVELS)}")
    try:
        return _CHECKS[check_id](workers, witnesses)
    except (ShellDivergence, ArithmeticError) as exc:
        if isinstance(exc, InternalInconsistency):
            raise
        raise InternalInconsistency(f"{check_id}: {exc}") from exc


@dataclass
class RunManifest:
    certificates: list

    @property
    def status(self) -> str:
        return "PASS" if all(c.status == "PASS" for c in self.certificates) else "FAIL"

    def archive_hash(self) -> str:
        h = hashlib.sha256()
        for c in self.certificates:
            h.update(c.to_bytes())
        return h.hexdigest()

    def to_bytes(self) -> bytes:
        lines = [
            f"tool ncorders {__version__}",
            "format 1",
            f"icosian_basis {ICOSIAN_BASIS}",
            f"cayley_dickson {CD_CONVENTION}",
        ]
        for c in self.certificates:
            lines.append(f"cert {c.check_id} {c.status} {c.sha256()}")
        lines.append(f"status {self.status}")
        lines.append(f"sha256={self.archive_hash()}")
        return ("\n".join(lines) + "\n").encode("ascii")


def run_all(out_dir: str | None = None, workers: int = 1, witnesses: str = "summary", checks=CHECK_IDS) -> RunManifest:
    certs = [run_check(c, workers, witnesses) for c in checks]
    manifest = RunManifest(certs)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for c in certs:
            with open(os.path.join(out_dir, f"{c.check_id}.cert"), "wb") as fh:
                fh.write(c.to_bytes())
        with open(os.path.join(out_dir, "MANIFEST"), "wb") as fh:
            fh.write(manifest.to_bytes())
    return manifest
