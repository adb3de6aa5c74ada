"""Kernel selection for the classical Monte-Carlo hot loop.

Prefers the compiled Cython extension; falls back to the numpy
implementation when the extension was not built or when the environment
variable ``LOSCHMIDT_PURE_PYTHON`` is set (useful for benchmarking).
"""

import os

from . import _sphere_map_np

if os.environ.get("LOSCHMIDT_PURE_PYTHON"):
    _impl = _sphere_map_np
else:
    try:
        from . import _sphere_map as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _sphere_map_np

KERNEL = _impl.KERNEL
map_step = _impl.map_step
correlation_sums = _impl.correlation_sums
