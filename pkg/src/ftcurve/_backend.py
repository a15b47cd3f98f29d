"""Select the compiled kernel module, falling back to pure numpy.

Set ``FTCURVE_BACKEND=python`` to force the fallback.
"""

import os

from . import _kernels_py

_NAMES = ("frechet_dp", "distortion_grid", "count_extrema_batch", "tc_batch", "min_ball")


class _Kernels:
    def __init__(self, module):
        self.BACKEND = module.BACKEND
        for name in _NAMES:
            setattr(self, name, getattr(module, name, getattr(_kernels_py, name)))


def load(name=None):
    """Return a kernel namespace for ``name`` ('cython', 'python' or None for best)."""
    if name == "python":
        return _Kernels(_kernels_py)
    try:
        from . import _kernels
    except ImportError:
        if name == "cython":
            raise
        return _Kernels(_kernels_py)
    return _Kernels(_kernels)


kernels = load(os.environ.get("FTCURVE_BACKEND") or None)
BACKEND = kernels.BACKEND


def compiled_available() -> bool:
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        return False
    return True
