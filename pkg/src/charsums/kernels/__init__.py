"""Histogram kernels for character-sum enumeration.

The hot loop walks projective points, evaluates the forms through
exp/log tables, and tallies an integer histogram of character exponents;
everything downstream of the histogram is exact.  Two interchangeable
implementations exist:

* ``numba`` (default): @njit compiled, point-at-a-time loops;
* ``numpy``: vectorized over index chunks, no compilation.

Selection: the ``CHARSUMS_BACKEND`` environment variable (``numba`` or
``numpy``), overridable per call via the ``backend=`` argument.  If numba
is unavailable the numpy path is used silently.
"""

from __future__ import annotations

import os

_VALID = ("numba", "numpy")


def default_backend() -> str:
    env = os.environ.get("CHARSUMS_BACKEND", "numba").strip().lower()
    if env not in _VALID:
        raise ValueError(f"CHARSUMS_BACKEND must be one of {_VALID}, got {env!r}")
    return env


def get_histogram_fn(backend: str | None = None):
    """Return histogram_block(prefix, start, stop, tables..., hist)."""
    name = backend if backend is not None else default_backend()
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    if name == "numba":
        try:
            from .histo_numba import histogram_block
            return histogram_block
        except ImportError:
            name = "numpy"
    from .histo_numpy import histogram_block
    return histogram_block
