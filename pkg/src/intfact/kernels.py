"""Backend selection for the subset valuation kernels.

The compiled extension is used when it has been built; otherwise the
pure-Python module is loaded.  Set ``INTFACT_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from intfact import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("INTFACT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from intfact import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

mask_min_sum = _impl.mask_min_sum
subset_min_sums = _impl.subset_min_sums
mixed_mismatches = _impl.mixed_mismatches


def backends():
    """Available backend modules keyed by name (the fallback is always present)."""
    out = {"python": _kernels_py}
    try:
        from intfact import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
