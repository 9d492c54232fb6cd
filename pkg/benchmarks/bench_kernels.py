"""Time the pure-Python and compiled kernels on the inputs the pipeline uses.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

Each kernel is run on identical arguments in both backends; the outputs are
compared before any timing is reported.
"""
import argparse
import sys
import time

from ncorders._kernels import _pykernels as py
from ncorders.orders import catalog
from ncorders.search import _stable_maps, f4_code, g0_data, tower_data
from ncorders.shells import _common_scale, enumerate_unit_shell, integer_table, scaled_tuple

try:
    from ncorders._kernels import _ckernels as cy
except ImportError:
    cy = None


def _shell_args(name):
    S = enumerate_unit_shell(catalog(name))
    scale = _common_scale(S.elements)
    alg = S.elements[0].algebra
    roots = [scaled_tuple(x, scale) for x in S.elements]
    gram2 = [[(int((2 * c).a), int((2 * c).b)) for c in row] for row in alg.gram()]
    return roots, scale, integer_table(alg), gram2


def cases(quick):
    e8 = _shell_args("coxeter_dickson")
    ico = _shell_args("icosian")
    data = g0_data()
    n = 8
    conj = [f4_code(data.conj[i][j]) for i in range(n) for j in range(n)]
    gram4 = [f4_code(data.gram[j][i]) for i in range(n) for j in range(n)]
    gram5 = [(data.gram[j][i].a + 3 * data.gram[j][i].b) % 5 for i in range(n) for j in range(n)]
    td = tower_data()
    form = td.form
    flat = form.flat_gram()
    stop5 = 5000 if quick else None
    iso = py.isotropic_lines(flat, n, 5)
    reps = iso[:500] if quick else iso
    maps = _stable_maps(td)
    return [
        ("product_table E8", "product_table", (e8[0], e8[2], e8[1])),
        ("reflection_table H4", "reflection_table", (ico[0], ico[3])),
        ("reflection_table E8", "reflection_table", (e8[0], e8[3])),
        ("f4_line_flags F4^8", "f4_line_flags", (conj, gram4, n, 4)),
        ("fp_line_flags F5^8", "fp_line_flags", (gram5, n, 5, 4, 0, stop5)),
        ("isotropic_lines F5^8", "isotropic_lines", (flat, n, 5, 0, stop5)),
        (f"stable_closure_dims x{len(reps)}", "stable_closure_dims", (reps, maps, n, 5)),
    ]


def best_of(f, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = f(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="truncate the large scans")
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled kernels are not built; run: python setup.py build_ext --inplace", file=sys.stderr)
        return 1
    print(f"{'kernel':<30}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for label, name, kargs in cases(args.quick):
        tp, op = best_of(getattr(py, name), kargs, args.repeat)
        tc, oc = best_of(getattr(cy, name), kargs, args.repeat)
        if op != oc:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        print(f"{label:<30}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
