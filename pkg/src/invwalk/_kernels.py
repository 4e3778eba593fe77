"""Kernel selection: compiled ``_core`` when importable, else ``_pycore``.

Set ``INVWALK_PURE=1`` to force the pure-Python kernels.
"""
import os

from . import _pycore

core = None
if os.environ.get("INVWALK_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as core
    except ImportError:  # extension not built
        core = None

active = core if core is not None else _pycore
BACKEND = active.BACKEND

walk_inversions = active.walk_inversions
enumerate_total = active.enumerate_total
heat_triangle_float = active.heat_triangle_float


def available():
    """Mapping backend name -> kernel module, for tests and benchmarks."""
    out = {"python": _pycore}
    if core is not None:
        out["cython"] = core
    return out
