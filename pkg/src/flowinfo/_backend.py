"""Picks the kernel implementation at import time.

The compiled extension is used when it was built; setting
``FLOWINFO_PURE_PYTHON=1`` forces the numpy/fsum fallback.
"""

import os

if os.environ.get("FLOWINFO_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels
        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
