"""Numeric kernel backends.

The hot loops (exponential power-series summation, batched Gauss-Kronrod
panel evaluation, zeta partial sums) exist twice: a numba-jitted backend
and a pure-numpy fallback.  ``EXPDERIV_BACKEND`` selects one at import
time:

* ``auto`` (default) - numba when importable, numpy otherwise
* ``numba``          - require numba, fail loudly if missing
* ``numpy``          - force the pure-numpy fallback

Both backends implement identical contracts with fixed summation orders,
so each is run-to-run deterministic; across backends values agree to a few
ulp but not necessarily bit for bit.
"""
from __future__ import annotations

import os

_choice = os.environ.get("EXPDERIV_BACKEND", "auto").strip().lower()
if _choice not in {"auto", "numba", "numpy"}:
    raise ValueError(
        f"EXPDERIV_BACKEND={_choice!r}: expected 'auto', 'numba' or 'numpy'"
    )

if _choice == "numpy":
    from . import numpy_backend as _impl

    BACKEND = "numpy"
else:
    try:
        from . import numba_backend as _impl

        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import numpy_backend as _impl

        BACKEND = "numpy"

power_series_sum = _impl.power_series_sum
osc_panels = _impl.osc_panels
zeta_panels = _impl.zeta_panels
zeta_power_sum = _impl.zeta_power_sum

__all__ = [
    "BACKEND",
    "power_series_sum",
    "osc_panels",
    "zeta_panels",
    "zeta_power_sum",
]
