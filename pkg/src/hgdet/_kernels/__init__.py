"""Modular elimination kernels.

A compiled extension provides the hot inner loop of the multimodular
determinant backend; a pure numpy implementation with identical semantics
is selected at import when the extension is unavailable.  Set
``HGDET_PURE_KERNELS=1`` to force the fallback.
"""

import os

if os.environ.get("HGDET_PURE_KERNELS") == "1":
    from .modelim_py import det_mod_p
    KERNEL_BACKEND = "python"
else:
    try:
        from ._modelim import det_mod_p
        KERNEL_BACKEND = "compiled"
    except ImportError:
        from .modelim_py import det_mod_p
        KERNEL_BACKEND = "python"

__all__ = ["det_mod_p", "KERNEL_BACKEND"]
