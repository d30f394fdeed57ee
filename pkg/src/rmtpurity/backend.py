"""Kernel backend selection: compiled extension if available, numpy otherwise.

Set ``RMTPURITY_PURE_PYTHON=1`` to force the numpy backend (useful for
benchmarking and for debugging the compiled kernels against it).
"""

import os

from . import _kernels_py

__all__ = ["BACKEND", "purity_of_amplitudes", "purity_curve"]

if os.environ.get("RMTPURITY_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

purity_of_amplitudes = _impl.purity_of_amplitudes
purity_curve = _impl.purity_curve
