"""Ring kernels with a compiled fast path and a pure-Python fallback.

The compiled module is preferred when importable; set HSCIRCLES_PURE_PYTHON=1
to force the fallback.  ``use_backend`` swaps implementations at runtime
(callers access the functions through this module, so the swap is global).
Both backends are exact twins; ``benchmarks/kernel_bench.py`` compares them.
"""

import os

from . import _ring_py

_BACKENDS = {"python": _ring_py}

try:
    from . import _ring_c

    _BACKENDS["cython"] = _ring_c
except ImportError:
    _ring_c = None

BACKEND = ""
ring_points = None
ring_match_count = None


def available_backends():
    return tuple(sorted(_BACKENDS))


def use_backend(name):
    """Select the active kernel backend ('python' or 'cython')."""
    global BACKEND, ring_points, ring_match_count
    try:
        mod = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} not available (have: {available_backends()})"
        ) from None
    BACKEND = name
    ring_points = mod.ring_points
    ring_match_count = mod.ring_match_count


if os.environ.get("HSCIRCLES_PURE_PYTHON") == "1" or _ring_c is None:
    use_backend("python")
else:
    use_backend("cython")
