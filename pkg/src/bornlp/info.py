"""Shannon-type helpers. All entropies are in bits."""

import numpy as np

from .errors import NumericalError

NORM_TOL = 1e-9
_CLAMP = 1e-300


def as_distribution(p, tol=NORM_TOL):
    """Return ``p`` as a float array summing to one.

    Small drift (within ``tol``) is renormalized away; anything larger is
    reported rather than silently fixed.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise NumericalError("distribution must be a non-empty vector")
    if not np.all(np.isfinite(p)):
        raise NumericalError("distribution has non-finite entries")
    if p.min() < -tol:
        raise NumericalError(f"negative probability {p.min():.3e}")
    s = p.sum()
    if abs(s - 1.0) > tol:
        raise NumericalError(f"distribution sums to {s!r}, not 1")
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def shannon(p):
    """Shannon entropy in bits with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(np.maximum(p, _CLAMP))))


def kl_bits(p, q):
    """Relative entropy D(p||q) in bits; +inf on support violation."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    mask = p > 0
    if np.any(q[mask] <= 0):
        return float("inf")
    return float(np.sum(p[mask] * np.log2(p[mask] / q[mask])))
