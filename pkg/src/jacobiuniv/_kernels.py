"""Backend selection for the hot kernels.

The compiled ``_core`` extension is used when it was built; otherwise, or
when the environment variable ``JACOBIUNIV_PURE_PYTHON`` is set to a
non-empty value, the numpy fallback is used.
"""

import os

from . import _fallback

BACKENDS = {"python": _fallback}

try:
    from . import _core
except ImportError:  # extension not built
    _core = None
else:
    BACKENDS["compiled"] = _core

if _core is not None and not os.environ.get("JACOBIUNIV_PURE_PYTHON"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]
rkpw = _impl.rkpw
recur_eval = _impl.recur_eval
kernel_sum = _impl.kernel_sum


def get_backend(name):
    """Return the kernel module registered under ``name`` ("compiled" or "python")."""
    try:
        return BACKENDS[name]
    except KeyError:
        raise ImportError(f"kernel backend {name!r} is not available") from None
