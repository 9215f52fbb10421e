"""Hot kernels, compiled when the extension is available.

The compiled module is picked at import time; set ``FERMNLTS_PURE=1`` to
force the Python reference implementation.
"""

from __future__ import annotations

import os

from . import _pure

BACKEND = "python"

if os.environ.get("FERMNLTS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pure
else:
    _impl = _pure

sort_majorana = _impl.sort_majorana
gf2_independent_flags = _impl.gf2_independent_flags
best_bipartition = _impl.best_bipartition

__all__ = ["BACKEND", "sort_majorana", "gf2_independent_flags", "best_bipartition"]
