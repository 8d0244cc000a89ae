"""Hot inner loops with a numba path and a pure-numpy fallback.

The compiled path is used when numba imports cleanly and the environment
variable ``SYMQENT_DISABLE_NUMBA`` is unset (or set to ``0``/``false``).
Both backends stay importable as ``kernels.jit`` / ``kernels.numpy_impl``
so tests and the benchmark can compare them directly.
"""
import os

from . import _numpy as numpy_impl

_flag = os.environ.get("SYMQENT_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    from . import _jit as jit
except ImportError:  # pragma: no cover - numba missing
    jit = None

if jit is not None and not _disabled:
    BACKEND = "numba"
    _impl = jit
else:
    BACKEND = "numpy"
    _impl = numpy_impl

aberth = _impl.aberth
jacobi_eigh = _impl.jacobi_eigh
sym_power = _impl.sym_power
homogeneous_eval = _impl.homogeneous_eval

__all__ = [
    "BACKEND",
    "aberth",
    "homogeneous_eval",
    "jacobi_eigh",
    "jit",
    "numpy_impl",
    "sym_power",
]
