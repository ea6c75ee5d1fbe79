"""Backend selection for the modular kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback.  ``HKBETTI_BACKEND=numpy`` forces the fallback.
"""

import os

from . import _kernels_py

_forced = os.environ.get("HKBETTI_BACKEND", "").lower()

if _forced == "numpy":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        if _forced == "cython":
            raise
        _impl = _kernels_py

BACKEND = _impl.BACKEND

powmod_vec = _impl.powmod_vec
inv_vec = _impl.inv_vec
pow_table = _impl.pow_table
gather_prod = _impl.gather_prod
term_accumulate = _impl.term_accumulate
series_mul = _impl.series_mul
series_inv1 = _impl.series_inv1
series_log1 = _impl.series_log1
newton_interp = _impl.newton_interp
horner = _impl.horner


def backends():
    """Available backend modules, fallback first."""
    out = [_kernels_py]
    try:
        from . import _kernels
        out.append(_kernels)
    except ImportError:
        pass
    return out
