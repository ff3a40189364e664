"""Hot exhaustive-scan kernels with a compiled core and a NumPy fallback.

The compiled module is used when it imports; set ``RIGIDLAB_KERNELS=python``
to force the fallback. ``BACKEND`` names the active implementation.
"""
import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_FORCE_PY = os.environ.get("RIGIDLAB_KERNELS", "").lower() in ("python", "py", "numpy")

if _ckernels is not None and not _FORCE_PY:
    _impl = _ckernels
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

NAMES = (
    "assoc_violations",
    "comm_violations",
    "left_distrib_violations",
    "right_distrib_violations",
    "action_assoc_violations",
    "action_ldistrib_violations",
    "action_rdistrib_violations",
    "rigid_violations",
    "semicomm_violations",
    "reduced_lz_violations",
    "compat_violations",
    "intersection_violations",
    "abelian_violations",
    "armendariz_violations",
    "alpha_violations",
    "convolution_table",
    "componentwise_table",
    "hom_violations",
)


def backends():
    """Available implementations keyed by name."""
    found = {"python": _pykernels}
    if _ckernels is not None:
        found["cython"] = _ckernels
    return found


def table(x):
    """Coerce to the C-contiguous int32 layout every kernel expects."""
    return np.ascontiguousarray(x, dtype=np.int32)


def __getattr__(name):
    if name in NAMES:
        return getattr(_impl, name)
    raise AttributeError(name)
