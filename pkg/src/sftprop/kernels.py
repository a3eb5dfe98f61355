"""Backend selection for the hot kernels.

The compiled ``_kernels`` extension is used when it imports; set
``SFTPROP_PURE=1`` to force the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _pure

pure = _pure
compiled = None
if os.environ.get("SFTPROP_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

BACKEND = "compiled" if compiled is not None else "pure"


def count_fixed_points(table, unit, hom, matrix):
    if compiled is not None:
        try:
            return compiled.count_fixed_points(table, unit, hom, matrix)
        except OverflowError:
            pass
    return _pure.count_fixed_points(table, unit, hom, matrix)


def factorizations(a, r, max_entry, limit=0):
    if compiled is not None and len(a) <= 16 and r <= 16 and (not a or len(a[0]) <= 16):
        try:
            return compiled.factorizations(a, r, max_entry, limit)
        except OverflowError:
            pass
    return _pure.factorizations(a, r, max_entry, limit)
