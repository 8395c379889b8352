"""Kernel backend selection.

The hot cycle-search loops ship twice: a numba ``@njit`` version and a
pure numpy/Python version. ``WHEELRAMSEY_JIT=0`` (or a missing numba)
selects the fallback at import time; :func:`set_backend` switches at runtime.
"""

import os
from contextlib import contextmanager

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

ENV_FLAG = "WHEELRAMSEY_JIT"
BACKENDS = ("numba", "numpy")


def jit_requested(environ=os.environ):
    value = environ.get(ENV_FLAG, "1").strip().lower()
    return value not in {"0", "false", "no", "off"}


_backend = "numba" if (HAVE_NUMBA and jit_requested()) else "numpy"


def njit(fn):
    """Compile ``fn`` with numba when available; otherwise return it as-is."""
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def get_backend():
    return _backend


def set_backend(name):
    global _backend
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextmanager
def use_backend(name):
    previous = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
