"""Kernel backend selection: compiled extension if present, numpy otherwise.

DOTCAV_BACKEND=python or DOTCAV_BACKEND=compiled forces the choice (the
latter raises if the extension was never built). Both backends implement the
same two functions; see benchmarks/bench_kernels.py for a speed comparison.
"""

import os

from . import _kernels_py


def _load(name: str):
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    raise ValueError(f"DOTCAV_BACKEND must be 'python' or 'compiled', not {name!r}")


_forced = os.environ.get("DOTCAV_BACKEND", "").strip().lower()
if _forced:
    kernels = _load(_forced)
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]

        kernels = _kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND_NAME


def get_kernels(backend: str | None = None):
    """Kernel module for `backend` (None = the import-time selection)."""
    if backend is None:
        return kernels
    return _load(backend)
