"""Comparator kernel backend selection.

The compiled extension (``_native``) is preferred; the NumPy module
(``_numpy``) is the fallback.  Set ``COINKNN_BACKEND=numpy`` or
``COINKNN_BACKEND=native`` to force a choice (``native`` raises if the
extension is missing).  Both backends implement the same functions and agree
to floating-point noise; within one installed build the selection is stable,
which is what the reproducibility guarantees rely on.
"""

import os

from . import _numpy

_requested = os.environ.get("COINKNN_BACKEND", "auto").lower()

if _requested == "numpy":
    _active = _numpy
elif _requested in ("auto", "native"):
    try:
        from . import _native as _active
    except ImportError:
        if _requested == "native":
            raise ImportError(
                "COINKNN_BACKEND=native but the compiled kernel extension "
                "is not installed"
            )
        _active = _numpy
else:
    raise ImportError(f"unknown COINKNN_BACKEND value: {_requested!r}")

BACKEND_NAME = _active.BACKEND_NAME
euclidean_from_ref = _active.euclidean_from_ref
coincidence_from_ref = _active.coincidence_from_ref
coincidence_pairs = _active.coincidence_pairs


def backend_name() -> str:
    """Name of the kernel backend selected at import: 'native' or 'numpy'."""
    return BACKEND_NAME
