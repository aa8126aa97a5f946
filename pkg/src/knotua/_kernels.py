"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it imports cleanly;
otherwise, or when ``KNOTUA_PURE_PYTHON`` is set to a non-empty value,
the pure-Python twin is used. ``BACKEND`` names the active choice.
"""
import os

from knotua import _pyspeedups

if os.environ.get("KNOTUA_PURE_PYTHON"):
    _impl = _pyspeedups
    BACKEND = "python"
else:
    try:
        from knotua import _speedups as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pyspeedups
        BACKEND = "python"

convolve = _impl.convolve
fp_mul = _impl.fp_mul
fp_sub = _impl.fp_sub
fp_divmod = _impl.fp_divmod
unit_shell = _impl.unit_shell

__all__ = ["BACKEND", "convolve", "fp_mul", "fp_sub", "fp_divmod", "unit_shell"]
