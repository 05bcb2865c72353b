"""Select the compiled integration kernels, falling back to numpy.

Set ``KZWIGNER_BACKEND=python`` to force the pure-Python path.
"""
import os

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

__all__ = ["BACKEND", "available", "get", "abs_line_integral", "qutrit_grid_sum"]


def available():
    """Names of the backends importable in this installation."""
    return ("compiled", "python") if _compiled is not None else ("python",)


def get(name="auto"):
    """Kernel module for ``name`` in {"auto", "compiled", "python"}."""
    if name == "auto":
        name = os.environ.get("KZWIGNER_BACKEND", "auto")
    if name == "python" or (name == "auto" and _compiled is None):
        return _fallback
    if _compiled is None:
        raise ImportError("compiled kernels are not built; reinstall with Cython available")
    return _compiled


BACKEND = "compiled" if get() is _compiled else "python"
abs_line_integral = get().abs_line_integral
qutrit_grid_sum = get().qutrit_grid_sum
