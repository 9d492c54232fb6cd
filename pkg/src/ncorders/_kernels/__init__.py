"""Backend selection for the integer kernels.

The compiled extension is used when it imports; otherwise, or when
``NCORDERS_PURE_PYTHON=1`` is set, the pure-Python module is used.  Both
expose the same functions and must return identical results.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("NCORDERS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

product_table = _active.product_table
golden_inner_matrix = _active.golden_inner_matrix
reflection_table = _active.reflection_table
isotropic_lines = _active.isotropic_lines
stable_closure_dims = _active.stable_closure_dims
fp_line_flags = _active.fp_line_flags
f4_line_flags = _active.f4_line_flags

# helpers that have no compiled twin
cd_product = python_backend.cd_product
iter_lines = python_backend.iter_lines
line_count = python_backend.line_count
MIXED = python_backend.MIXED
CONJ_STABLE = python_backend.CONJ_STABLE
PAIRED = python_backend.PAIRED
pack = python_backend.pack
unpack = python_backend.unpack

__all__ = [
    "BACKEND",
    "compiled_backend",
    "python_backend",
    "product_table",
    "golden_inner_matrix",
    "reflection_table",
    "isotropic_lines",
    "stable_closure_dims",
    "fp_line_flags",
    "f4_line_flags",
    "cd_product",
    "iter_lines",
    "line_count",
    "MIXED",
    "CONJ_STABLE",
    "PAIRED",
    "pack",
    "unpack",
]
