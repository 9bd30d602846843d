"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``ASYMTOP_PURE_PYTHON`` is set to a non-empty value other than ``0``,
the numpy fallback in ``_fallback`` is used.
"""
import os

from . import _fallback

_force_pure = os.environ.get("ASYMTOP_PURE_PYTHON", "") not in ("", "0")

if _force_pure:
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

sturm_count = _impl.sturm_count
bisect_all = _impl.bisect_all
power_trace_diagonal = _impl.power_trace_diagonal


def backends():
    """Map of every importable backend name to its module."""
    out = {"python": _fallback}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
