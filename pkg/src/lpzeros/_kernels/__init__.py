"""Accumulation kernels: compiled extension when available, numpy otherwise.

Set ``LPZEROS_PURE_PYTHON=1`` to force the numpy fallback even when the
compiled extension is installed.  ``BACKEND`` names the active choice.
"""

import os

from . import fallback

if os.environ.get("LPZEROS_PURE_PYTHON") == "1":
    _impl = fallback
    BACKEND = "numpy"
else:
    try:
        from . import _lp_core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = fallback
        BACKEND = "numpy"

poly_eval_many = _impl.poly_eval_many
lp_moment_sums = _impl.lp_moment_sums

__all__ = ["BACKEND", "poly_eval_many", "lp_moment_sums", "fallback"]
