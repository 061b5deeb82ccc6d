"""Backend dispatch for the GF(2) hot kernels.

INDEXCODE_BACKEND selects the implementation:
  "numba"  force the JIT-compiled kernels (error if numba is missing),
  "numpy"  force the pure-Python/NumPy reference kernels,
  "auto"   (default) numba when importable, reference otherwise.
Both backends export the same functions with identical semantics.
"""

from __future__ import annotations

import os

_choice = os.environ.get("INDEXCODE_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"INDEXCODE_BACKEND must be auto, numba, or numpy, got {_choice!r}"
    )

if _choice == "numpy":
    from indexcode._kernels import _numpy as _impl

    BACKEND = "numpy"
elif _choice == "numba":
    from indexcode._kernels import _numba as _impl

    BACKEND = "numba"
else:
    try:
        from indexcode._kernels import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        from indexcode._kernels import _numpy as _impl

        BACKEND = "numpy"

MAX_BITS = _impl.MAX_BITS
rank_masks = _impl.rank_masks
in_span_masks = _impl.in_span_masks
rank_dense = _impl.rank_dense
first_undecodable = _impl.first_undecodable
fitting_search = _impl.fitting_search
oracle_scan2 = _impl.oracle_scan2
oracle_scan3 = _impl.oracle_scan3

__all__ = [
    "BACKEND",
    "MAX_BITS",
    "rank_masks",
    "in_span_masks",
    "rank_dense",
    "first_undecodable",
    "fitting_search",
    "oracle_scan2",
    "oracle_scan3",
]
