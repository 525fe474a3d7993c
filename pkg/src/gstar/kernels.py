"""Backend selection for the hot loops.

The compiled module is used when it imports and the inputs fit its 64-bit
family encoding (r <= 6); otherwise calls go to the pure-Python twin.  Set
``GSTAR_PURE=1`` to force the Python backend.
"""
from __future__ import annotations

import os

from . import _pykernels

_c = None
if not os.environ.get("GSTAR_PURE"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

MAX_COMPILED_R = 6


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _c is not None else [])


def backend_module(name: str | None = None):
    if name is None:
        return _c if _c is not None else _pykernels
    if name == "python":
        return _pykernels
    if name == "cython":
        if _c is None:
            raise ImportError("compiled kernels are not built")
        return _c
    raise ValueError(f"unknown backend {name!r}")


BACKEND = backend_module().BACKEND


def _pick(r: int, backend: str | None):
    mod = backend_module(backend)
    if mod is not _pykernels and r > MAX_COMPILED_R:
        if backend == "cython":
            raise ValueError(f"compiled kernels support r <= {MAX_COMPILED_R}")
        return _pykernels
    return mod


def disjoint_table(r: int) -> list[int]:
    return _pykernels.disjoint_table(r)


def scan_pairs(r, fams1, fams2, dtable, pmaps, use_transpose=True, backend=None):
    return _pick(r, backend).scan_pairs(fams1, fams2, dtable, pmaps, use_transpose)


def canonical_pair(r, f1, f2, pmaps, backend=None):
    return _pick(r, backend).canonical_pair(f1, f2, pmaps)


def is_canonical(r, f1, f2, pmaps, backend=None):
    return _pick(r, backend).is_canonical(f1, f2, pmaps)


def family_cmp(a: int, b: int) -> int:
    return _pykernels.family_cmp(a, b)


def pair_cmp(a1: int, a2: int, b1: int, b2: int) -> int:
    return _pykernels.pair_cmp(a1, a2, b1, b2)


def touched(cells, r: int, backend=None):
    return backend_module(backend).touched(cells, r)


def brute_force_min(n: int, r: int, prune: bool = True, backend=None) -> int:
    mod = backend_module(backend)
    if mod is not _pykernels and r > 64:
        mod = _pykernels
    return mod.brute_force_min(n, r, prune)
