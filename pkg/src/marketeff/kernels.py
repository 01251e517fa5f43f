"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy twin.
Set ``MARKETEFF_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("MARKETEFF_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

max_table_gain = _impl.max_table_gain
max_table_gain_exact = _pykernels.max_table_gain_exact

__all__ = ["BACKEND", "max_table_gain", "max_table_gain_exact"]
