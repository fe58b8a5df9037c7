"""Golden-section search for 1-D scalar maximization."""

from __future__ import annotations

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(f, lo: float, hi: float, xtol: float = 1e-10):
    """Maximize f on [lo, hi]; returns (x, f(x)) at the best sampled point.

    Assumes f is unimodal on the bracket (kinks are fine); with multiple
    local maxima only a local maximum is found, so callers locate a global
    bracket with a coarse grid first.
    """
    a, b = (lo, hi) if lo <= hi else (hi, lo)
    h = b - a
    if h <= xtol:
        x = 0.5 * (a + b)
        return x, f(x)
    n = int(math.ceil(math.log(xtol / h) / math.log(_INVPHI)))
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n - 1):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= _INVPHI
            c = a + _INVPHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= _INVPHI
            d = a + _INVPHI * h
            yd = f(d)
    return (c, yc) if yc > yd else (d, yd)
