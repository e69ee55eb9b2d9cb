"""JSON helpers for reports."""

import json

import numpy as np

SCHEMA = 1


def dec(x, digits=12) -> str:
    """Decimal string with ``digits`` significant digits."""
    x = float(x)
    if x == 0:
        return "0"
    return format(x, f".{digits}g")


def complex_matrix(m) -> list:
    """Row-major nested list of [re, im] pairs."""
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)
