import hashlib
import json
import os

import pytest

from ncorders import certify
from ncorders.certify import CHECK_IDS, Certificate, RunManifest, parse, run_check, serialize
from ncorders.cli import main
from ncorders.shells import ShellDivergence


def _cert(**kw):
    base = dict(check_id="demo", parameters={"p": 5}, counts={"b": 2, "a": 1}, witnesses=["w"])
    base.update(kw)
    return Certificate(**base)


def test_serialization_round_trip():
    c = _cert(expected={"a": {"source": "s", "value": 1}})
    data = serialize(c)
    assert parse(data) == c
    assert serialize(parse(data)) == data
    lines = data.decode().splitlines()
    keys = [next(iter(json.loads(line))) for line in lines]
    assert keys == sorted(keys)
    assert b" " not in data.replace(b'"w"', b"")


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        serialize(_cert(counts={"x": 0.5}))


def test_hash_is_sha256_of_bytes():
    c = _cert()
    assert c.sha256() == hashlib.sha256(c.to_bytes()).hexdigest()


def test_manifest_layout():
    a, b = _cert(check_id="a"), _cert(check_id="b", status="FAIL")
    m = RunManifest([a, b])
    text = m.to_bytes().decode()
    lines = text.splitlines()
    assert lines[-1] == "sha256=" + hashlib.sha256(a.to_bytes() + b.to_bytes()).hexdigest()
    assert f"cert a PASS {a.sha256()}" in lines
    assert "status FAIL" in lines
    assert m.status == "FAIL"


def test_mismatch_sets_fail():
    c = _cert(expected={"a": {"source": "s", "value": 7}})
    certify._finish(c, {"a": 1})
    assert c.status == "FAIL"
    assert c.mismatches == [{"computed": 1, "expected": 7, "key": "a"}]


def test_p3_certificate_is_reproducible():
    a = run_check("p3-gram", witnesses="full")
    b = run_check("p3-gram", witnesses="full")
    assert a.status == "PASS" and a.to_bytes() == b.to_bytes()
    assert run_check("p3-gram", witnesses="none").witnesses == []


def test_unknown_check_and_level():
    with pytest.raises(KeyError):
        run_check("p9")
    with pytest.raises(ValueError):
        run_check("p3-gram", witnesses="some")


# CLI ---------------------------------------------------------------------


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert all(c in out for c in CHECK_IDS)


def test_cli_usage_errors(capsys):
    assert main(["check", "nope"]) == 3
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 3
    with pytest.raises(SystemExit) as err:
        main(["all", "--witnesses", "many"])
    assert err.value.code == 3
    assert main(["all", "--workers", "0"]) == 3
    assert main(["export-shell", "nowhere"]) == 3


def test_cli_check_writes_certificate(tmp_path):
    assert main(["check", "self-dual", "--out", str(tmp_path), "--witnesses", "none"]) == 0
    data = (tmp_path / "self-dual.cert").read_bytes()
    assert parse(data).status == "PASS"


def test_cli_export_shell(tmp_path, capsys):
    assert main(["export-shell", "hurwitz"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 24
    assert main(["export-shell", "h3", "--out", str(tmp_path)]) == 0
    assert len((tmp_path / "h3.shell").read_text().splitlines()) == 30


def test_cli_mismatch_exit_code(monkeypatch, tmp_path):
    def bad(workers, witnesses):
        c = Certificate("p3-gram", expected={"x": {"source": "s", "value": 1}})
        return certify._finish(c, {"x": 2})

    monkeypatch.setitem(certify._CHECKS, "p3-gram", bad)
    assert main(["check", "p3-gram", "--out", str(tmp_path)]) == 1


def test_cli_inconsistency_exit_code(monkeypatch):
    def diverge(workers, witnesses):
        raise ShellDivergence("closure and box disagree")

    monkeypatch.setitem(certify._CHECKS, "p2-shells", diverge)
    assert main(["check", "p2-shells"]) == 2


def test_run_all_writes_files(tmp_path):
    subset = ("p3-gram", "self-dual")
    m = certify.run_all(str(tmp_path), checks=subset)
    assert sorted(os.listdir(tmp_path)) == ["MANIFEST", "p3-gram.cert", "self-dual.cert"]
    assert (tmp_path / "MANIFEST").read_bytes() == m.to_bytes()


def test_certificate_bytes_do_not_depend_on_workers():
    one = run_check("p5-sqrt5", workers=1, witnesses="full")
    many = run_check("p5-sqrt5", workers=8, witnesses="full")
    assert one.to_bytes() == many.to_bytes()


def test_counts_are_integers():
    c = run_check("p6-tower", witnesses="none")
    assert all(type(v) is int for v in c.counts.values())
