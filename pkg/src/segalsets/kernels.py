"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise, or when the
``SEGALSETS_PURE_PYTHON`` environment variable is set, the pure-Python
versions are used.  ``BACKEND`` names the active one.
"""
import os

from . import _kernels_py

if os.environ.get("SEGALSETS_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

fiber_join = _impl.fiber_join
first_repeat = _impl.first_repeat
count_triples = _impl.count_triples


def backends():
    """Map of backend name to module, for every backend importable here."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
        found["compiled"] = _kernels
    except ImportError:
        pass
    return found
