"""Numeric tolerance shared by the floating-point code paths."""

import os

DEFAULT_TOL = 1e-12
TOL_ENV_VAR = "CLIFFKIT_TOL"


def numeric_tol() -> float:
    """Return the active numeric tolerance (``CLIFFKIT_TOL`` overrides the default)."""
    raw = os.environ.get(TOL_ENV_VAR)
    if not raw:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ValueError(f"{TOL_ENV_VAR}={raw!r} is not a number") from None
    if not tol > 0:
        raise ValueError(f"{TOL_ENV_VAR} must be positive, got {raw!r}")
    return tol
