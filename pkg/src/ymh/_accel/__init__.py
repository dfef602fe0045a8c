"""Backend selection for the sparse elimination kernel.

At import time the compiled extension is preferred; the pure-Python mirror is
used when the extension is unavailable or when ``YMH_PURE=1`` is set.  Both
implement the same deterministic algorithm, so results do not depend on the
backend.
"""

import os

from . import _elim_py

if os.environ.get("YMH_PURE") == "1":
    _impl = _elim_py
    BACKEND = "pure"
else:
    try:
        from . import _elim as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _elim_py
        BACKEND = "pure"

rank_of_rows = _impl.rank_of_rows
echelon_insert = _impl.echelon_insert


def backend_name() -> str:
    """Name of the elimination backend in use ('compiled' or 'pure')."""
    return BACKEND
