"""Bound envelopes, crossover constants, and the upper/lower ratio curve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import bounds
from ._optim import BracketError, bisect_root
from .geometry import TWO_PI
from .strategies import InfeasibleSystemError, optimize_fast_chord

S_SUP = bounds.S_SUP


class FastChordCache:
    """Fast-chord worst-case curve, memoized on an s-grid.

    Each evaluation is itself an x3 sweep, so crossover finding and ratio
    sweeps snap s to grid nodes and interpolate linearly between them.
    """

    def __init__(self, s_step: float = 2e-2, x3_step: float = 1e-2,
                 time_step: float = 1e-2) -> None:
        self.s_step = s_step
        self.x3_step = x3_step
        self.time_step = time_step
        self._nodes: dict[int, float] = {}

    def _node_value(self, idx: int) -> float:
        if idx not in self._nodes:
            s = max(1.0, min(idx * self.s_step, S_SUP - 1e-9))
            try:
                best = optimize_fast_chord(s, self.x3_step, self.time_step)
                self._nodes[idx] = best.worst_time
            except InfeasibleSystemError:
                self._nodes[idx] = math.inf
        return self._nodes[idx]

    def value(self, s: float) -> float:
        if not 1.0 <= s < S_SUP:
            raise ValueError(f"s must lie in [1, 2*pi + 1), got {s}")
        lo = int(math.floor(s / self.s_step))
        hi = lo + 1
        v_lo = self._node_value(lo)
        if abs(s - lo * self.s_step) < 1e-12:
            return v_lo
        v_hi = self._node_value(hi)
        f = (s - lo * self.s_step) / self.s_step
        return (1.0 - f) * v_lo + f * v_hi


_default_cache = FastChordCache()


def default_fast_chord_cache() -> FastChordCache:
    """Process-wide cache shared by sweeps, constants, and the service."""
    return _default_cache


def lb_overall(s: float) -> float:
    """Weakest of the best both-explore and fast-explores lower bounds."""
    if not 1.0 <= s < S_SUP:
        raise ValueError(f"s must lie in [1, 2*pi + 1), got {s}")
    bes = max(bounds.lb_bes_original(s), bounds.lb_bes_improved_value(s))
    if s > math.pi + 1.0:
        bes = max(bes, bounds.lb_bes_antipodal(s))
    return min(bes, bounds.lb_fes(s))


def ub_overall(s: float,
               cache: FastChordCache | None = None) -> tuple[float, str]:
    """Best strategy bound at speed s, with the winning family label."""
    if not 1.0 <= s < S_SUP:
        raise ValueError(f"s must lie in [1, 2*pi + 1), got {s}")
    cache = cache or _default_cache
    candidates = [(bounds.ub_half_chord(s), "half-chord")]
    if s <= 2.0:
        candidates.append((bounds.ub_bsp(s), "bsp"))
    fc = cache.value(s)
    if math.isfinite(fc):
        candidates.append((fc, "fast-chord"))
    return min(candidates, key=lambda kv: kv[0])


@dataclass(frozen=True)
class CrossoverResult:
    """Located intersection of two bound curves."""

    name: str
    s_star: float
    residual: float
    bracket: tuple[float, float]


def find_crossover(curve_a: Callable[[float], float],
                   curve_b: Callable[[float], float],
                   bracket: tuple[float, float],
                   name: str = "crossover",
                   tol: float = 1e-6) -> CrossoverResult:
    """Bisection on curve_a - curve_b; the bracket must straddle the crossing."""
    lo, hi = bracket
    diff = lambda s: curve_a(s) - curve_b(s)
    try:
        s_star = bisect_root(diff, lo, hi, x_tol=tol)
    except BracketError as exc:
        raise BracketError(f"{name}: {exc}") from exc
    return CrossoverResult(name=name, s_star=s_star,
                           residual=abs(diff(s_star)), bracket=bracket)


def compute_constants(
        cache: FastChordCache | None = None) -> dict[str, CrossoverResult]:
    """All six crossover speeds between the bound curves.

    The closed-form crossings resolve to 1e-6; those touching the numeric
    fast-chord curve inherit its sweep granularity.
    """
    cache = cache or _default_cache
    consts: dict[str, CrossoverResult] = {}

    consts["c_1.86"] = find_crossover(
        lambda s: (1.0 + TWO_PI) / s, bounds.ub_bsp,
        (1.5, 2.0), name="c_1.86")
    # branch handovers: interior maximizer reaches the domain edge
    consts["c_4.84"] = find_crossover(
        lambda s: 2.0 * math.acos(-2.0 / (s + 1.0)), lambda s: s - 1.0,
        (4.5, 5.2), name="c_4.84")
    consts["c_4.97"] = find_crossover(
        lambda s: 2.0 * math.acos(-2.0 / s), lambda s: s - 1.0,
        (4.5, 5.2), name="c_4.97")
    consts["c_2.75"] = find_crossover(
        bounds.lb_bes_improved_value, bounds.lb_fes,
        (2.3, 3.3), name="c_2.75", tol=1e-3)
    consts["c_1.71"] = find_crossover(
        cache.value, bounds.ub_bsp,
        (1.55, 1.95), name="c_1.71", tol=1e-3)
    consts["c_2.07"] = find_crossover(
        cache.value, bounds.ub_half_chord,
        (1.95, 2.25), name="c_2.07", tol=1e-3)
    return consts


@dataclass(frozen=True)
class EnvelopeSample:
    s: float
    lb: float
    ub: float
    best_strategy: str
    ratio: float


def envelope(s_min: float, s_max: float, step: float,
             cache: FastChordCache | None = None) -> list[EnvelopeSample]:
    """Overall lower/upper bounds and winning strategy on an s-grid."""
    if not 1.0 <= s_min < s_max < S_SUP:
        raise ValueError("range must satisfy 1 <= s_min < s_max < 2*pi + 1")
    samples = []
    n = int(round((s_max - s_min) / step))
    for i in range(n + 1):
        s = min(s_min + i * step, s_max)
        lb = lb_overall(s)
        ub, label = ub_overall(s, cache)
        samples.append(EnvelopeSample(s, lb, ub, label, ub / lb))
    return samples


def max_ratio(s_min: float, s_max: float, step: float = 1e-2,
              cache: FastChordCache | None = None) -> tuple[float, float]:
    """(arg-max s, max ub/lb ratio) over the sampled range."""
    best_s, best_r = s_min, -math.inf
    for sample in envelope(s_min, s_max, step, cache):
        if sample.ratio > best_r:
            best_s, best_r = sample.s, sample.ratio
    return best_s, best_r
