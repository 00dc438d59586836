"""Kernel backend selection: compiled extension if available, else pure Python.

Set ``SPHERIGON_PURE_KERNELS=1`` to force the pure backend (used by the
parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SPHERIGON_PURE_KERNELS", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

SELF_CROSS = _kernels_py.SELF_CROSS
ANTIPODAL_CROSS = _kernels_py.ANTIPODAL_CROSS

eps_signs = _impl.eps_signs
pair_scan = _impl.pair_scan
gp_scan = _impl.gp_scan
hemisphere_scan = _impl.hemisphere_scan


def backend_name() -> str:
    return _impl.BACKEND
