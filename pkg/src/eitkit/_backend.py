"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure numpy/Python
kernels when it is missing.  Set EIT_BACKEND=python (or =ext) to force a
choice; forcing `ext` when the extension failed to build is an error
rather than a silent fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("EIT_BACKEND", "auto").lower()

if _choice not in ("auto", "ext", "python"):
    raise RuntimeError(f"EIT_BACKEND must be 'auto', 'ext' or 'python', got {_choice!r}")

if _choice == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "ext":
            raise RuntimeError("EIT_BACKEND=ext but the compiled extension is not available")
        _impl = _kernels_py

NAME: str = _impl.NAME
fisher_yates = _impl.fisher_yates
fnv1a64 = _impl.fnv1a64
slic_iterate = _impl.slic_iterate


def backend_name() -> str:
    """Active kernel backend: 'ext' (compiled) or 'python' (fallback)."""
    return NAME
