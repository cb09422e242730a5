"""Hot-kernel backend selection.

The compiled extension (Cython) is preferred when importable; the
pure-numpy fallback is used otherwise or when the environment variable
MITM_FORCE_PURE is set to a non-empty value.  Both backends implement the
same two entry points with identical semantics:

* ``closed_chi_grid``  - closed-form susceptibility over a flat grid
* ``steady_chi_grid``  - steady-state susceptibility over a flat grid

``python benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import _pure
from .flags import (FLAG_DENOM_POLE, FLAG_NDD_POLE, FLAG_NONLINEAR,  # noqa: F401
                    FLAG_OK, FLAG_SOLVER)

try:
    from . import _core
except ImportError:  # pragma: no cover - depends on the build
    _core = None

if _core is not None and not os.environ.get("MITM_FORCE_PURE"):
    _impl = _core
else:
    _impl = _pure

BACKEND = _impl.BACKEND
closed_chi_grid = _impl.closed_chi_grid
steady_chi_grid = _impl.steady_chi_grid


def backends():
    """Mapping of available backend name -> module."""
    out = {"pure": _pure}
    if _core is not None:
        out["compiled"] = _core
    return out
