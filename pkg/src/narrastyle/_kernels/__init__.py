"""Numeric kernel backends.

The compiled backend and the pure-Python reference implement the same
operations with the same sequential arithmetic, so results are
bit-identical. Selection happens once at import: the extension when it
built, pure Python otherwise or when NARRASTYLE_PURE_PYTHON=1.
"""

from __future__ import annotations

import os

from . import _pykern

if os.environ.get("NARRASTYLE_PURE_PYTHON", "") == "1":
    _impl = _pykern
    BACKEND = "python"
else:
    try:
        from . import _ckern as _impl  # type: ignore[no-redef]
        BACKEND = "c"
    except ImportError:
        _impl = _pykern
        BACKEND = "python"

pearson_matrix = _impl.pearson_matrix
rohde = _impl.rohde
kendall_counts = _impl.kendall_counts
louvain_sweep = _impl.louvain_sweep

__all__ = ["BACKEND", "pearson_matrix", "rohde", "kendall_counts", "louvain_sweep"]
