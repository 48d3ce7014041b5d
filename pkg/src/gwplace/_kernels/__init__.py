"""Hot numeric kernels with two interchangeable backends.

The numba backend is used when importable; set ``GWPLACE_NUMBA=0`` to force
the pure-numpy fallback (or ``=1`` to require numba and fail loudly if it is
missing). The choice is made once at import time. Both backends produce
identical results; ``benchmarks/bench_kernels.py`` compares their speed.
"""

import os

_flag = os.environ.get("GWPLACE_NUMBA", "").strip().lower()
if _flag in ("0", "false", "off", "no"):
    _use_numba = False
elif _flag in ("1", "true", "on", "yes"):
    import numba  # noqa: F401  (fail here if explicitly requested but absent)

    _use_numba = True
elif _flag:
    raise ValueError(f"GWPLACE_NUMBA must be 0 or 1, got {_flag!r}")
else:
    try:
        import numba  # noqa: F401

        _use_numba = True
    except ImportError:
        _use_numba = False

if _use_numba:
    from . import _numba as _impl
else:
    from . import _numpy as _impl

BACKEND = "numba" if _use_numba else "numpy"
UNREACHED = _impl.UNREACHED

hops_from_sources = _impl.hops_from_sources
population_total_hops = _impl.population_total_hops
lloyd = _impl.lloyd
pam = _impl.pam
ga_generation = _impl.ga_generation
bnb_pmedian = _impl.bnb_pmedian


def backend():
    """Name of the active kernel backend ("numba" or "numpy")."""
    return BACKEND
