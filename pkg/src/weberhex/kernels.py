"""Kernel dispatch: compiled extension when importable, else pure Python.

Set ``WEBERHEX_PURE=1`` in the environment to force the Python kernels.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("WEBERHEX_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        pass

mask_images = _impl.mask_images
stabilizer_members = _impl.stabilizer_members
sqrt_mul = _impl.sqrt_mul

_INT64_SAFE = 1 << 60


def box_search(gram, target, values):
    n = len(gram)
    biggest = max((abs(x) for row in gram for x in row), default=0)
    vmax = max((abs(v) for v in values), default=0)
    if BACKEND == "compiled" and biggest * n * n * vmax * vmax < _INT64_SAFE and abs(target) < _INT64_SAFE:
        return _impl.box_search(gram, target, list(values))
    return _pykernels.box_search(gram, target, values)
