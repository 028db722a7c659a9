"""Runtime settings read from the environment.

``COXPLANE_TOL`` overrides the snap tolerance used to identify vectors.
``COXPLANE_DISABLE_JIT`` (any non-empty value other than ``0``) forces the
pure-numpy kernel path even when numba is importable.
"""
import os

DEFAULT_EPS = 1e-9


def _read_eps():
    raw = os.environ.get("COXPLANE_TOL")
    if not raw:
        return DEFAULT_EPS
    value = float(raw)
    if not 0.0 < value < 1e-3:
        raise ValueError(f"COXPLANE_TOL must lie in (0, 1e-3), got {raw!r}")
    return value


EPS = _read_eps()


def jit_disabled():
    flag = os.environ.get("COXPLANE_DISABLE_JIT", "")
    return flag not in ("", "0")
