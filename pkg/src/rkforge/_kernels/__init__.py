"""Hot numerical kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built and imports cleanly, unless
``RKFORGE_PURE_PYTHON`` is set to a non-empty value.  ``BACKEND`` names the
implementation in use.
"""
import os

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("RKFORGE_PURE_PYTHON"):
    _impl = compiled_backend
    BACKEND = "cython"
else:
    _impl = python_backend
    BACKEND = "python"

a85_residual = _impl.a85_residual
fill_rows = _impl.fill_rows
elementary_weights = _impl.elementary_weights
variation = _impl.variation
rk_step = _impl.rk_step
poly_max = _impl.poly_max

__all__ = [
    "BACKEND",
    "a85_residual",
    "compiled_backend",
    "elementary_weights",
    "fill_rows",
    "poly_max",
    "python_backend",
    "rk_step",
    "variation",
]
