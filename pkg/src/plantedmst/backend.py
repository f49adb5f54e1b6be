"""Kernel backend selection.

The hot inner loops (Kruskal's union-find pass, Prufer decoding) exist in
two interchangeable implementations: numba-compiled and pure numpy/python.
The environment variable ``PLANTEDMST_BACKEND`` picks one at import time:

* ``auto`` (default): numba if importable, else the numpy fallback;
* ``numba``: require numba, fail loudly if missing;
* ``numpy``: force the fallback (useful for debugging and benchmarking).

Both backends produce bit-identical results; see benchmarks/bench_backends.py
for a speed comparison.
"""

from __future__ import annotations

import os

_requested = os.environ.get("PLANTEDMST_BACKEND", "auto").strip().lower()
if _requested not in {"auto", "numba", "numpy"}:
    raise ValueError(
        f"PLANTEDMST_BACKEND must be one of auto|numba|numpy, got {_requested!r}"
    )

if _requested == "numpy":
    from . import _kernels_numpy as _impl

    ACTIVE_BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        ACTIVE_BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as _impl

        ACTIVE_BACKEND = "numpy"

kruskal_select = _impl.kruskal_select
prufer_decode = _impl.prufer_decode
