"""Kernel dispatch: the compiled extension when it imports, else pure Python.

Set ``FOCKFORGE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("FOCKFORGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py

conv1d = _impl.conv1d
conv2d = _impl.conv2d
partitions_of = _impl.partitions_of
corner_cells = _impl.corner_cells
corner_excess = _impl.corner_excess

__all__ = [
    "BACKEND",
    "conv1d",
    "conv2d",
    "partitions_of",
    "corner_cells",
    "corner_excess",
]
