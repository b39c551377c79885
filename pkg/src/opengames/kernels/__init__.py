"""Oracle kernels: the compiled extension when it was built, else pure Python.

``BACKEND`` names the implementation in use.  Set ``OG_PURE_PYTHON=1`` to
force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("OG_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"
nash_mask = _impl.nash_mask
spe_pairs = _impl.spe_pairs

__all__ = ["BACKEND", "nash_mask", "spe_pairs"]
