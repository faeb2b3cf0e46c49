"""Closed-form and numeric upper/lower bound curves as functions of s.

Every closed form carries the grid-maximization problem it solves; the test
suite re-derives each one by brute force. The two internal branch-switch
speeds (near 4.84 and 4.97) are located at import time by bisection rather
than hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._optim import bisect_root
from .geometry import TWO_PI

S_SUP = TWO_PI + 1.0  # beyond this Fast alone finishes before Slow lands


@dataclass(frozen=True)
class BoundValue:
    """One labeled sample of a bound curve."""

    s: float
    value: float
    kind: str    # "upper" | "lower"
    family: str


@lru_cache(maxsize=1)
def c_484() -> float:
    """Speed where the mid lower-bound branch for both-explore strategies
    hands over to 1 + sin((s-1)/2): the interior maximizer hits y = 0."""
    return bisect_root(lambda s: 2.0 * math.acos(-2.0 / (s + 1.0)) - (s - 1.0),
                       4.5, 5.2, x_tol=1e-9)


@lru_cache(maxsize=1)
def c_497() -> float:
    """Speed where the antipodal bound switches branch: the maximizer
    a* = 2*arccos(-2/s) falls below a = s - 1."""
    return bisect_root(lambda s: 2.0 * math.acos(-2.0 / s) - (s - 1.0),
                       4.5, 5.2, x_tol=1e-9)


def ub_half_chord(s: float) -> float:
    """Worst-case evacuation time of the (generalized) half-chord strategy."""
    if s < 1.0:
        raise ValueError(f"s must be >= 1, got {s}")
    if s <= 2.0:
        return (1.0 + TWO_PI) / s
    return (1.0 + 2.0 * math.acos(-2.0 / s)) / s + math.sqrt(1.0 - 4.0 / (s * s))


def half_chord_phase1_time(s: float, a: float) -> float:
    """Evacuation time if the exit is found at distance a into Fast's sweep
    while Slow is still on its inbound segment (s >= 2, a in [0, 1])."""
    if s < 2.0:
        raise ValueError(f"s must be >= 2, got {s}")
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    r = (1.0 + a) / s
    return r + math.sqrt(1.0 + r * r + 2.0 * r * math.cos(0.5 - a))


def ub_bsp(s: float) -> float:
    """Worst-case evacuation time of both-to-the-same-point, s in [1, 2]."""
    if not 1.0 <= s <= 2.0:
        raise ValueError(f"BSP bound is analyzed for s in [1, 2], got {s}")
    sp1 = s + 1.0
    return (1.0 + 2.0 * math.sqrt(1.0 - 1.0 / (sp1 * sp1))
            + (2.0 * math.acos(-1.0 / sp1) - s + 1.0) / sp1)


def bsp_phase1_time(s: float, a: float) -> float:
    """Evacuation time when Fast finds the exit after covering a, before
    Slow reaches the boundary (a in [0, s-1])."""
    if not 0.0 <= a <= s - 1.0 + 1e-12:
        raise ValueError(f"a must lie in [0, s-1], got {a}")
    r = (a + 1.0) / s
    return r + math.sqrt(1.0 + r * r - 2.0 * r * math.cos(a))


def bsp_phase2_time(s: float, d: float) -> float:
    """Evacuation time when Fast finds the exit a distance d into the
    two-sided sweep (d in [0, (2*pi - s + 1)/(1 + 1/s)))."""
    d_max = (TWO_PI - s + 1.0) / (1.0 + 1.0 / s)
    if not 0.0 <= d < d_max + 1e-12:
        raise ValueError(f"d must lie in [0, {d_max:.6f}), got {d}")
    return 1.0 + d / s + 2.0 * math.sin((d * (1.0 + 1.0 / s) + s - 1.0) / 2.0)


def lb_fes(s: float) -> float:
    """Lower bound for strategies where only Fast explores the boundary."""
    if s < 1.0:
        raise ValueError(f"s must be >= 1, got {s}")
    if s <= 2.0:
        return (1.0 + TWO_PI) / s
    # maximizer a* = 2*arccos(-2/s) of (1 + a)/s + sin(a/2)
    return (1.0 + 2.0 * math.acos(-2.0 / s)) / s + math.sqrt(1.0 - 4.0 / (s * s))


def lb_bes_original(s: float) -> float:
    """Original lower bound for strategies where both robots explore."""
    if not 1.0 <= s < S_SUP:
        raise ValueError(f"s must lie in [1, 2*pi + 1), got {s}")
    sp1 = s + 1.0
    if s < 2.0:
        return (1.0 + (2.0 / s) * math.sqrt(1.0 - (s * s) / (sp1 * sp1))
                + (-s + 2.0 * math.acos(-s / sp1) + 1.0) / sp1)
    if s <= c_484():
        return (1.0 + math.sqrt(1.0 - 4.0 / (sp1 * sp1))
                + (-s + 2.0 * math.acos(-2.0 / sp1) + 1.0) / sp1)
    return 1.0 + math.sin((s - 1.0) / 2.0)


def lb_bes_antipodal(s: float) -> float:
    """Both-explore lower bound from the fast-explores argument, s > pi + 1."""
    if s <= math.pi + 1.0:
        raise ValueError(f"s must exceed pi + 1, got {s}")
    if s < c_497():
        return 1.0 + math.sin((s - 1.0) / 2.0)
    return (1.0 + 2.0 * math.acos(-2.0 / s)) / s + math.sqrt(1.0 - 4.0 / (s * s))


def ses_worst_case() -> float:
    """Worst case when only Slow explores: land, then one full boundary loop."""
    return 1.0 + TWO_PI


@dataclass(frozen=True)
class ImprovedBesEvaluation:
    """Result of the nested both-explore optimization at one speed."""

    s: float
    y_star: float
    k_star: float
    u: float        # unexplored length at the witness (y, k)
    lam: float      # distance from disk center to the unexplored chord midpoint
    value: float
    expr_used: str  # "eq1" | "eq2"


def _eq1_value_for_y(s: float, y: float, k_step: float) -> tuple[float, float]:
    """Inner min-over-k for both adversary cases at a fixed y.

    Returns (value, k_star). Feasible k satisfy k <= y and keep the
    unexplored length u = 2*pi - s + 1 - (s+1)*y + k at or below pi.
    """
    k_cap = min(y, (s + 1.0) * y - (math.pi - s + 1.0))
    if k_cap < -1e-12:
        return -math.inf, 0.0
    k_cap = max(k_cap, 0.0)
    ks = np.arange(0.0, k_cap + k_step * 0.5, k_step)
    if ks.size == 0 or ks[-1] < k_cap - 1e-15:
        ks = np.append(ks, k_cap)
    # analytic guard candidate: k = max(0, 1 - lambda) evaluated at k = 0
    w0 = (s - 1.0 + (s + 1.0) * y) / 2.0
    k_hat = max(0.0, 1.0 - abs(math.cos(w0)))
    if k_hat <= k_cap:
        ks = np.append(ks, k_hat)

    w = (s - 1.0 + (s + 1.0) * y - ks) / 2.0
    sin_w = np.sin(w)
    lam = np.abs(np.cos(w))
    chase_chord = (2.0 / s) * sin_w                      # Fast crosses the chord
    reach = np.maximum(1.0 - lam - ks, 0.0)
    half_chord = np.sqrt(sin_w * sin_w + reach * reach)  # Slow from point K

    i1 = int(np.argmin(chase_chord))
    i2 = int(np.argmin(half_chord))
    if chase_chord[i1] >= half_chord[i2]:
        return 1.0 + y + float(chase_chord[i1]), float(ks[i1])
    return 1.0 + y + float(half_chord[i2]), float(ks[i2])


def lb_bes_improved(s: float, y_step: float = 1e-3,
                    k_step: float = 1e-3) -> ImprovedBesEvaluation:
    """Improved both-explore lower bound by nested grid optimization.

    Maximizes over y the adversary's better option between crossing the
    unexplored chord and reaching its far endpoint (with Slow allowed to
    pre-position k deep inside the disk), then compares with the
    explore-everything schedule, returning the larger with its witnesses.
    """
    if y_step <= 0.0 or k_step <= 0.0:
        raise ValueError("grid steps must be positive")
    if not 1.0 <= s < S_SUP:
        raise ValueError(f"s must lie in [1, 2*pi + 1), got {s}")
    sp1 = s + 1.0
    y_min = max(0.0, (math.pi - s + 1.0) / sp1)
    y_max = (TWO_PI - s + 1.0) / sp1

    ys = list(np.arange(y_min, y_max, y_step))
    # exact stationary candidates of the k = 0 objectives, to kill grid aliasing
    for target in (-s / sp1, -2.0 / sp1):
        y_hat = (2.0 * math.acos(target) - s + 1.0) / sp1
        if y_min <= y_hat < y_max:
            ys.append(y_hat)

    best_val, best_y, best_k = -math.inf, y_min, 0.0
    for y in ys:
        val, k = _eq1_value_for_y(s, float(y), k_step)
        if val > best_val:
            best_val, best_y, best_k = val, float(y), k

    eq2 = 1.0 + (TWO_PI - s + 1.0) / sp1  # constant in y; minimizer k = 0

    if eq2 > best_val:
        value, y_star, k_star, expr = eq2, y_min, 0.0, "eq2"
    else:
        value, y_star, k_star, expr = best_val, best_y, best_k, "eq1"
    u = TWO_PI - s + 1.0 - sp1 * y_star + k_star
    lam = abs(math.cos((s - 1.0 + sp1 * y_star - k_star) / 2.0))
    return ImprovedBesEvaluation(s=s, y_star=y_star, k_star=k_star, u=u,
                                 lam=lam, value=value, expr_used=expr)


@lru_cache(maxsize=4096)
def lb_bes_improved_value(s: float, y_step: float = 1e-3,
                          k_step: float = 1e-3) -> float:
    """Cached scalar view of lb_bes_improved for sweeps and crossovers."""
    return lb_bes_improved(s, y_step, k_step).value
