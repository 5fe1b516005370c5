"""Backend selection for the hot kernels.

The compiled extension ``projmono._kernels`` is used when importable; setting
``PROJMONO_PURE_PYTHON=1`` forces the numpy fallback.  ``BACKEND`` records
which one is live.
"""
import os

from . import _kernels_py

if os.environ.get("PROJMONO_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

horner = _impl.horner
initial_guesses = _impl.initial_guesses
aberth = _impl.aberth
fiber_coeffs = _impl.fiber_coeffs
newton_correct = _impl.newton_correct
track_segment = _impl.track_segment


def backends():
    """Map of available backend name -> module (for parity tests and benchmarks)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out
