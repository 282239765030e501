"""Kernel lane selection: compiled extension if importable, numpy otherwise.

Set BCHLATTICE_FORCE_PY=1 to force the pure-Python lane (used by the lane
equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _pykernel

USING_COMPILED = False

if not os.environ.get("BCHLATTICE_FORCE_PY"):
    try:
        from . import _ckernel  # type: ignore[attr-defined]
        USING_COMPILED = True
    except ImportError:
        _ckernel = None
else:
    _ckernel = None


def koetter_interpolate(spec, points, w, delta_ub, ly_cap):
    if USING_COMPILED:
        try:
            return _ckernel.koetter_interpolate(spec, list(points), int(w),
                                                int(delta_ub), int(ly_cap))
        except MemoryError:
            # The dense compiled buffers exceeded their budget; the sparse
            # fallback handles outsized instances, just slower.
            pass
    return _pykernel.koetter_interpolate(spec, list(points), int(w),
                                         int(delta_ub), int(ly_cap))


def rr_yroots(spec, rows, k):
    if USING_COMPILED:
        return _ckernel.rr_yroots(spec, list(rows), int(k))
    return _pykernel.rr_yroots(spec, list(rows), int(k))
