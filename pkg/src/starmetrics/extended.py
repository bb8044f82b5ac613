"""Arithmetic on the extended half-line [0, +inf].

Values are plain floats (or float arrays) with +inf encoded natively.
Only the few operations that need a convention beyond IEEE live here.
"""
import numpy as np

INF = float("inf")


def reciprocal(a):
    """1/a with 1/0 = inf and 1/inf = 0, exact for every input."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.where(a == 0.0, INF, 1.0 / np.where(a == 0.0, 1.0, a))
    return out if out.ndim else float(out)


def abs_gap(a, b):
    """|a - b| on [0, inf] with |inf - inf| = 0 and |inf - finite| = inf."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    both = np.isinf(a) & np.isinf(b)
    one = np.isinf(a) ^ np.isinf(b)
    safe_a = np.where(np.isinf(a), 0.0, a)
    safe_b = np.where(np.isinf(b), 0.0, b)
    out = np.abs(safe_a - safe_b)
    out = np.where(one, INF, np.where(both, 0.0, out))
    return out if out.ndim else float(out)


def positive_gap(a, b):
    """(a - b)_+ on [0, inf]: 0 when a <= b, inf when a = inf > b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    finite = np.isfinite(a) & np.isfinite(b)
    diff = np.where(finite, np.where(finite, a, 0.0) - np.where(finite, b, 0.0), 0.0)
    out = np.where(a <= b, 0.0, np.where(finite, diff, INF))
    return out if out.ndim else float(out)


def sup(values):
    """Max of a possibly empty collection, 0 when empty."""
    values = np.asarray(values, dtype=float)
    return float(values.max()) if values.size else 0.0


def to_json(x):
    """Float to a JSON-safe value ('inf' for +inf)."""
    x = float(x)
    return "inf" if np.isinf(x) and x > 0 else x


def from_json(x):
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "+inf", "infinity"):
            return INF
        raise ValueError(f"not an extended real: {x!r}")
    value = float(x)
    if value < 0 or np.isnan(value):
        raise ValueError(f"radial values must lie in [0, inf], got {x!r}")
    return value
