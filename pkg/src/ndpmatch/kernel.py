"""Kernel selection: compiled extension when importable, else pure Python.

Set ``NDPMATCH_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel

py_net_ndp = _pykernel.net_ndp

try:
    if os.environ.get("NDPMATCH_PURE_PYTHON"):
        raise ImportError("pure-Python kernel forced")
    from ._ckernel import net_ndp as c_net_ndp
except ImportError:
    c_net_ndp = None

COMPILED = c_net_ndp is not None
BACKEND = "cython" if COMPILED else "python"
net_ndp = c_net_ndp if COMPILED else py_net_ndp
