import importlib
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncorders import _kernels
from ncorders._kernels import _pykernels as py
from ncorders.algebra import octonions, quaternions
from ncorders.orders import catalog
from ncorders.shells import _common_scale, enumerate_unit_shell, integer_table, scaled_tuple

try:
    cy = importlib.import_module("ncorders._kernels._ckernels")
except ImportError:  # extension not built
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def _scaled_shell(name):
    S = enumerate_unit_shell(catalog(name))
    scale = _common_scale(S.elements)
    return [scaled_tuple(x, scale) for x in S.elements], scale, S.elements[0].algebra


def _gram2(alg):
    return [[(int((2 * c).a), int((2 * c).b)) for c in row] for row in alg.gram()]


@pytest.fixture(scope="module")
def icosian_roots():
    return _scaled_shell("icosian")


@pytest.fixture(scope="module")
def e8_roots():
    return _scaled_shell("coxeter_dickson")


@needs_cy
def test_product_table_backends_agree(icosian_roots, e8_roots):
    for roots, scale, alg in (icosian_roots, e8_roots):
        table = integer_table(alg)
        assert py.product_table(roots, table, scale) == cy.product_table(roots, table, scale)


@needs_cy
def test_reflection_backends_agree(icosian_roots, e8_roots):
    for roots, _, alg in (icosian_roots, e8_roots):
        g2 = _gram2(alg)
        assert py.golden_inner_matrix(roots, g2) == cy.golden_inner_matrix(roots, g2)
        assert py.reflection_table(roots, g2) == cy.reflection_table(roots, g2)


def _signed_tuple(dim):
    return st.lists(st.integers(-3, 3), min_size=2 * dim, max_size=2 * dim).map(tuple)


@needs_cy
@settings(max_examples=200)
@given(st.lists(_signed_tuple(8), min_size=1, max_size=12), st.sampled_from([1, 2, 4]))
def test_product_table_random(elems, scale):
    table = integer_table(octonions())
    assert py.product_table(elems, table, scale) == cy.product_table(elems, table, scale)


@needs_cy
@settings(max_examples=200)
@given(data=st.data())
def test_reflection_table_random_subsets(data, icosian_roots):
    roots, _, alg = icosian_roots
    idx = data.draw(st.lists(st.integers(0, len(roots) - 1), min_size=1, max_size=20, unique=True))
    sub = [roots[i] for i in idx]
    g2 = _gram2(alg)
    assert py.reflection_table(sub, g2) == cy.reflection_table(sub, g2)


def _square(n, lo, hi):
    return st.lists(st.integers(lo, hi), min_size=n * n, max_size=n * n)


@st.composite
def fp_problem(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    n = draw(st.integers(2, 5))
    total = py.line_count(n, p)
    start = draw(st.integers(0, total))
    stop = draw(st.integers(start, total))
    return draw(_square(n, 0, p - 1)), n, p, start, stop


@needs_cy
@settings(max_examples=300)
@given(fp_problem())
def test_fp_kernels_agree(prob):
    M, n, p, start, stop = prob
    half = n // 2
    assert py.fp_line_flags(M, n, p, half, start, stop) == cy.fp_line_flags(M, n, p, half, start, stop)
    assert py.isotropic_lines(M, n, p, start, stop) == cy.isotropic_lines(M, n, p, start, stop)


@needs_cy
@settings(max_examples=300)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), _square(n, 0, 3), _square(n, 0, 3))))
def test_f4_kernels_agree(prob):
    n, conj, gram = prob
    assert py.f4_line_flags(conj, gram, n, n // 2) == cy.f4_line_flags(conj, gram, n, n // 2)


@needs_cy
@settings(max_examples=200)
@given(
    st.sampled_from([3, 5]).flatmap(
        lambda p: st.integers(2, 4).flatmap(
            lambda n: st.tuples(st.just(p), st.just(n), st.lists(_square(n, 0, p - 1), min_size=1, max_size=3))
        )
    )
)
def test_stable_closure_agree(prob):
    p, n, maps = prob
    reps = list(py.iter_lines(n, p))
    assert py.stable_closure_dims(reps, maps, n, p) == cy.stable_closure_dims(reps, maps, n, p)


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 5))
def test_line_enumeration(p, n):
    lines = list(py.iter_lines(n, p))
    assert len(lines) == len(set(lines)) == py.line_count(n, p) == (p**n - 1) // (p - 1)
    for v in lines:
        x = py.unpack(v, n, p)
        assert next(c for c in x if c) == 1
        assert py.pack(x, p) == v
    assert lines == sorted(lines)


@settings(max_examples=200)
@given(st.integers(2, 5), st.sampled_from([3, 5]), st.integers(1, 6))
def test_chunking_does_not_change_results(n, p, parts):
    M = [(i * 7 + j * 3 + 1) % p for i in range(n) for j in range(n)]
    whole = py.fp_line_flags(M, n, p, n // 2)
    total = py.line_count(n, p)
    bounds = [total * k // parts for k in range(parts + 1)]
    pieces = []
    for a, b in zip(bounds, bounds[1:]):
        pieces += py.fp_line_flags(M, n, p, n // 2, a, b)
    assert pieces == whole


def test_cd_product_matches_algebra():
    H = quaternions()
    table = integer_table(H)
    x = H.element([1, 2, 3, 4])
    y = H.element([0, -1, 5, 2])
    assert _kernels.cd_product(scaled_tuple(x, 1), scaled_tuple(y, 1), table) == scaled_tuple(x * y, 1)
    with pytest.raises(ArithmeticError):
        _kernels.cd_product(scaled_tuple(x, 1), scaled_tuple(y, 1), table, scale=2)


def test_backend_selection():
    if cy is not None and not os.environ.get("NCORDERS_PURE_PYTHON"):
        assert _kernels.BACKEND == "cython"
    env = dict(os.environ, NCORDERS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import ncorders._kernels as k; print(k.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


@needs_cy
@pytest.mark.slow
def test_pure_python_pipeline_gives_the_same_manifest():
    from ncorders.certify import run_all

    compiled = run_all(None, workers=1, witnesses="full").to_bytes()
    env = dict(os.environ, NCORDERS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-m", "ncorders", "all", "--witnesses", "full"],
        env=env,
        capture_output=True,
        check=True,
    )
    assert out.stdout == compiled
