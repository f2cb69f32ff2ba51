"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``DIHEDRAL_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _ccd_py

if os.environ.get("DIHEDRAL_PURE_PYTHON") == "1":
    _impl = _ccd_py
else:
    try:
        from . import _ccd as _impl
    except ImportError:  # extension not built
        _impl = _ccd_py

BACKEND = _impl.BACKEND
segment_distance = _impl.segment_distance
sweep_pair = _impl.sweep_pair
sweep_range = _impl.sweep_range
first_violation = _impl.first_violation


def backends():
    """Available kernel modules keyed by name."""
    out = {"python": _ccd_py}
    try:
        from . import _ccd

        out["cython"] = _ccd
    except ImportError:
        pass
    return out
