"""Kernel backend selection.

``CHANCAP_BACKEND=numpy`` forces the pure-numpy path; the default is the
numba path when numba imports cleanly.  The choice is made once, at import.
"""
import logging
import os

from . import _kernels_numpy

log = logging.getLogger(__name__)

BACKENDS = {"numpy": _kernels_numpy}
try:
    from . import _kernels_numba
except ImportError as exc:  # pragma: no cover - numba is a declared dependency
    log.warning("numba unavailable (%s); using numpy kernels", exc)
else:
    BACKENDS["numba"] = _kernels_numba

ENV_VAR = "CHANCAP_BACKEND"


def _select():
    requested = os.environ.get(ENV_VAR, "numba").strip().lower() or "numba"
    if requested not in ("numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {requested!r}")
    if requested not in BACKENDS:
        log.warning("%s=%s requested but not available; falling back to numpy", ENV_VAR, requested)
        requested = "numpy"
    return requested


NAME = _select()
kernels = BACKENDS[NAME]
