"""Select the coefficient kernel at import time.

The compiled extension is used when it is importable; setting
``QCONG_PURE_PYTHON=1`` forces the pure-Python kernels.
"""

from __future__ import annotations

import os

from qcong import _kernels_py

kernels = _kernels_py
NAME = "python"

if os.environ.get("QCONG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from qcong import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        NAME = "cython"

mul = kernels.mul
divmod_monic = kernels.divmod_monic
add_shifted = kernels.add_shifted
