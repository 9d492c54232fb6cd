"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

All expected numbers are written out here, independently of the expected
tables inside the certificates.  Run directly with ``python tests/test_acceptance.py``.
"""
import functools
import subprocess
import sys

import pytest

from conftest import ACCEPTANCE_LINES
from ncorders.certify import CHECK_IDS, parse, run_all


def criterion(number, title):
    def wrap(test):
        @functools.wraps(test)
        def run(*args, **kwargs):
            try:
                test(*args, **kwargs)
            except BaseException:
                _report(number, title, "FAIL")
                raise
            _report(number, title, "PASS")

        return run

    return wrap


def _report(number, title, status):
    line = f"criterion {number}: {status}  {title}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="session")
def run1(tmp_path_factory):
    out = tmp_path_factory.mktemp("run1")
    manifest = run_all(str(out), workers=1, witnesses="summary")
    certs = {c: parse((out / f"{c}.cert").read_bytes()) for c in CHECK_IDS}
    return out, manifest, certs


def counts(run1, check):
    return run1[2][check].counts


def params(run1, check):
    return run1[2][check].parameters


@criterion(1, "order closure")
def test_order_closure(run1):
    c = counts(run1, "p1-closure")
    assert c["orders_verified"] == 10
    assert c["icosian.products"] == 16 and c["icosian.conjugates"] == 4
    assert c["icosian_double.products"] == 64 and c["icosian_double.conjugates"] == 8
    assert c["counterexample_violations"] == 1
    assert run1[2]["p1-closure"].status == "PASS"


@criterion(2, "shell sizes")
def test_shell_sizes(run1):
    c = counts(run1, "p2-shells")
    want = {
        "gaussian": 4,
        "eisenstein": 6,
        "hamilton": 8,
        "hybrid": 12,
        "hurwitz": 24,
        "graves_cayley": 16,
        "coxeter_dickson": 240,
        "icosian": 120,
        "icosian_double": 240,
        "h2": 10,
        "h3": 30,
    }
    assert {k: c[f"{k}.size"] for k in want} == want


@criterion(3, "root-shell verification")
def test_root_shells(run1):
    c = counts(run1, "p2-shells")
    names = [
        "gaussian",
        "eisenstein",
        "hamilton",
        "hybrid",
        "hurwitz",
        "graves_cayley",
        "coxeter_dickson",
        "icosian",
        "icosian_double",
        "h2",
        "h3",
        "h4",
    ]
    assert all(c[f"{n}.root_checks"] == 1 for n in names)
    crystallographic = {n for n in names if c[f"{n}.crystallographic"]}
    assert crystallographic == {"gaussian", "eisenstein", "hamilton", "hybrid", "hurwitz", "graves_cayley", "coxeter_dickson"}
    h2 = set(params(run1, "p2-shells")["h2.cartan_values"])
    assert h2 == {"2/1+0/1*phi", "-2/1+0/1*phi", "0/1+1/1*phi", "0/1-1/1*phi", "-1/1+1/1*phi", "1/1-1/1*phi"}


@criterion(4, "icosian shell equals the H4 coordinate set")
def test_icosian_is_h4(run1):
    c = counts(run1, "p2-shells")
    assert c["h4_equals_icosian_shell"] == 1
    assert c["h4.size"] == 120


@criterion(5, "Gram facts")
def test_gram_facts(run1):
    p = params(run1, "p3-gram")
    c = counts(run1, "p3-gram")
    assert p["icosian.gram"] == "[[2,0,1,-1],[0,2,1,-1+1*phi],[1,1,2,-1],[-1,-1+1*phi,-1,2]]"
    assert p["icosian.det"] == "1+1*phi"
    assert p["icosian_double.det"] == "2+3*phi"
    assert p["icosian_double.det_field_norm"] == 1
    assert c["icosian.trace_det"] == 625
    assert c["icosian_double.trace_det"] == 5**8
    assert c["icosian.trace_even"] == 1
    s = counts(run1, "self-dual")
    assert s["icosian_double.self_dual"] == 1 and s["icosian_double.inverse_integral"] == 1


@criterion(6, "denominator-two no-go")
def test_den2(run1):
    c = counts(run1, "p4-den2")
    assert c["lines"] == 21845
    assert (c["NotMixed"], c["ConjFail"], c["PairingFail"], c["Survivor"]) == (170, 16320, 5355, 0)
    assert c["orders_checked"] == 720
    assert c["max_survivors_any_order"] == 0


@criterion(7, "ramified no-go")
def test_sqrt5(run1):
    c = counts(run1, "p5-sqrt5")
    assert c["lines"] == 97656
    assert c["mixed"] == 97344
    assert c["Survivor"] == 0
    assert c["gram_rank_mod_sqrt5"] == 8


@criterion(8, "half-root scans")
def test_half_roots(run1):
    s = counts(run1, "half-root-strict")
    assert s["pairs"] == 14400 and s["cosets"] == 3600 and s["Survivor"] == 0
    assert params(run1, "half-root-strict")["norm_values"] == ["1/2+0/1*phi"]
    t = counts(run1, "half-root-trace")
    tp = params(run1, "half-root-trace")
    assert t["pairs"] == 14400
    assert tp["trace_norm_values"] == ["1"]
    assert tp["lambda_member_half"] is False
    assert (t["polar_raw"], t["polar_cosets"]) == (324, 81)
    assert t["Survivor"] == 0


@criterion(9, "tower no-go")
def test_tower(run1):
    c = counts(run1, "p6-tower")
    assert c["quotient_rank"] == 8 and c["quotient_fives"] == 8
    assert params(run1, "p6-tower")["form_type"] == "plus"
    assert c["isotropic"] == 19656
    assert c["hyperbolic_rank"] == 4
    assert c["phi_scalar_3"] == 1 and c["sqrt5_zero"] == 1
    assert c["closure_dim_8"] == 19656
    assert c["candidates"] == 0


@criterion(10, "associator witness and alternative laws")
def test_associator(run1):
    c = counts(run1, "p1-closure")
    assert c["associator_witness"] == 1
    assert c["alternative_triples"] == 10**4
    assert c["alternative_failures"] == 0


@criterion(11, "determinism across worker counts")
def test_determinism(run1, tmp_path_factory):
    # a fresh interpreter, so no cached state is shared with the first run
    out2 = tmp_path_factory.mktemp("run2")
    cmd = [sys.executable, "-m", "ncorders", "all", "--out", str(out2), "--workers", "2", "--witnesses", "summary"]
    assert subprocess.run(cmd, capture_output=True).returncode == 0
    first = (run1[0] / "MANIFEST").read_bytes()
    second = (out2 / "MANIFEST").read_bytes()
    assert first == second
    assert first.decode().splitlines()[-1].startswith("sha256=")
    for c in CHECK_IDS:
        assert (run1[0] / f"{c}.cert").read_bytes() == (out2 / f"{c}.cert").read_bytes()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
