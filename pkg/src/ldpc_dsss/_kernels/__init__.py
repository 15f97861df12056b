"""Decoding-loop backends: compiled extension when available, numpy otherwise.

The two implementations share one calling convention::

    decode_loop(row_ptr, edge_col, channel_llr, max_iter, form, clamp,
                stop_on_convergence) -> (bits, converged, iterations, totals)

and must produce identical decisions on identical inputs.
"""

from __future__ import annotations

from . import _spa_np
from ._spa_np import ATANH_EPS, FORM_SIGNMAG, FORM_TANH

try:
    from . import _spa  # compiled

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _spa = None
    HAVE_COMPILED = False

DEFAULT_BACKEND = "compiled" if HAVE_COMPILED else "numpy"

__all__ = [
    "ATANH_EPS",
    "FORM_TANH",
    "FORM_SIGNMAG",
    "HAVE_COMPILED",
    "DEFAULT_BACKEND",
    "available_backends",
    "get_decode_loop",
]


def available_backends() -> tuple[str, ...]:
    return ("compiled", "numpy") if HAVE_COMPILED else ("numpy",)


def get_decode_loop(backend: str | None = None):
    """Resolve a backend name ("compiled", "numpy" or None for the default)."""
    name = DEFAULT_BACKEND if backend is None else backend
    if name == "numpy":
        return _spa_np.decode_loop
    if name == "compiled":
        if not HAVE_COMPILED:
            raise ValueError("compiled decoding kernel is not available in this install")
        return _spa.decode_loop
    raise ValueError(f"unknown backend {name!r}; expected 'compiled' or 'numpy'")
