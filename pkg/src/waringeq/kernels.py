"""Backend selection for the integer hot loops.

The compiled module ``_ckernels`` is used when it was built and importable;
otherwise the pure-Python ``_pykernels`` is used.  Setting the environment
variable ``WARINGEQ_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("WARINGEQ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

hom_eval = _impl.hom_eval
matmul = _impl.matmul
matvec = _impl.matvec
gauss_jordan = _impl.gauss_jordan
charpoly = _impl.charpoly


def available_backends():
    """Map backend name to module for every importable implementation."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
