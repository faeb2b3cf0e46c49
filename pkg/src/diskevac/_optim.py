"""Small deterministic scalar solvers shared across the package."""

from __future__ import annotations

import math
from typing import Callable


class BracketError(ValueError):
    """The supplied bracket does not contain a sign change."""


def bisect_root(f: Callable[[float], float], lo: float, hi: float,
                x_tol: float = 1e-12, f_tol: float = 0.0,
                max_iter: int = 200) -> float:
    """Root of f on [lo, hi] by plain bisection.

    Requires f(lo) and f(hi) of opposite sign (either may be zero).
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= f_tol or hi - lo <= x_tol:
            return mid
        if flo * fm <= 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def scan_brackets(f: Callable[[float], float], lo: float, hi: float,
                  n: int = 1000) -> list[tuple[float, float]]:
    """Sub-intervals of [lo, hi] (n pieces) where f changes sign."""
    brackets = []
    step = (hi - lo) / n
    x_prev = lo
    f_prev = f(lo)
    for i in range(1, n + 1):
        x = lo + i * step if i < n else hi
        fx = f(x)
        if f_prev == 0.0 or f_prev * fx <= 0.0:
            brackets.append((x_prev, x))
        x_prev, f_prev = x, fx
    return brackets


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       x_tol: float) -> tuple[float, float]:
    """Maximizer of f on [lo, hi] by golden-section search.

    Deterministic; converges to the peak of a unimodal function, including
    peaks at a jump discontinuity. Returns (x, f(x)).
    """
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > x_tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)
