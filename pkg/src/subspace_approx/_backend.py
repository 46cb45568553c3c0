"""Selection between the numba kernels and their pure-numpy twins.

The backend is read from ``SUBSPACE_APPROX_BACKEND`` (``numba`` or ``numpy``)
when the package is imported and can be switched at runtime with
:func:`set_backend`. Both backends return bit-identical integer results and
floating results that agree to rounding.
"""
from __future__ import annotations

import os
import warnings

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

ENV_VAR = "SUBSPACE_APPROX_BACKEND"
BACKENDS = ("numba", "numpy")


def _initial() -> str:
    name = os.environ.get(ENV_VAR, "").strip().lower()
    if not name:
        return "numba" if HAVE_NUMBA else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"{ENV_VAR} must be one of {BACKENDS}, got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        warnings.warn("numba requested but not importable; using numpy kernels")
        return "numpy"
    return name


_current = _initial()


def get_backend() -> str:
    return _current


def set_backend(name: str) -> str:
    """Switch backends and return the previous one."""
    global _current
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    previous, _current = _current, name
    return previous


def available_backends() -> tuple[str, ...]:
    return BACKENDS if HAVE_NUMBA else ("numpy",)
