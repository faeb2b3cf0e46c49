"""Adversarial evaluation: worst-case exit placement against a strategy.

Discovery times are computed analytically from boundary-contact structure
(arc sweeps and isolated touch points), so there is no time-discretization
bias; the adversary itself runs on an angle grid with golden-section
refinement around the best cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ._optim import golden_section_max
from .geometry import (ArcSet, EPS_BOUNDARY, TWO_PI, Trajectory,
                       explored_arcs, normalize_angle)

if TYPE_CHECKING:
    from .strategies import Strategy

DEFAULT_GRID_STEP = TWO_PI / 1e4
DEFAULT_REFINE_TOL = 1e-8

# Angular tolerance for matching an exit against an isolated boundary touch.
_EVENT_ANGLE_TOL = 1e-9


class CoverageError(RuntimeError):
    """The strategy never explores the queried boundary point(s)."""


@dataclass(frozen=True)
class WorstCase:
    """Adversary's best exit placement and the resulting evacuation time."""

    exit_angle: float
    discovery_time: float
    finder: str  # "fast" | "slow"
    evac_time: float
    grid_step_used: float


class StrategyEvaluator:
    """Precomputed boundary-coverage schedule for fast vectorized queries.

    With notify_at_unit_speed the notified robot's beeline is charged at
    speed 1 regardless of which robot it is. That convention inflates the
    cost of exits found by Slow and is what the fast-chord comparison curves
    use; the default charges each robot its own max speed.
    """

    def __init__(self, strategy: "Strategy",
                 eps_boundary: float = EPS_BOUNDARY,
                 notify_at_unit_speed: bool = False) -> None:
        self.strategy = strategy
        self.notify_at_unit_speed = notify_at_unit_speed
        self._fast_cov = self._coverage(strategy.fast, eps_boundary)
        self._slow_cov = self._coverage(strategy.slow, eps_boundary)
        self._eps = eps_boundary

    @staticmethod
    def _coverage(traj: Trajectory, eps: float):
        return (traj.boundary_arc_segments(eps),
                traj.boundary_point_events(eps))

    @staticmethod
    def _earliest_times(coverage, thetas: np.ndarray) -> np.ndarray:
        segments, events = coverage
        times = np.full(thetas.shape, np.inf)
        for t0, dur, a0, rate in segments:
            sign = 1.0 if rate >= 0.0 else -1.0
            delta = (sign * (thetas - a0)) % TWO_PI
            swept = abs(rate) * dur
            hit = delta <= swept + 1e-9
            cand = t0 + delta / abs(rate)
            times = np.where(hit, np.minimum(times, cand), times)
        for te, ang in events:
            diff = np.abs((thetas - ang + math.pi) % TWO_PI - math.pi)
            times = np.where(diff <= _EVENT_ANGLE_TOL,
                             np.minimum(times, te), times)
        return times

    def evaluate(self, thetas: np.ndarray):
        """Discovery time, finder mask and evacuation time per exit angle.

        Returns (discovery, finder_is_fast, evac); uncovered angles get
        infinite discovery and evacuation times.
        """
        thetas = np.asarray(thetas, dtype=float)
        t_fast = self._earliest_times(self._fast_cov, thetas)
        t_slow = self._earliest_times(self._slow_cov, thetas)
        finder_is_fast = t_fast <= t_slow  # simultaneous discovery -> Fast
        disc = np.minimum(t_fast, t_slow)

        covered = np.isfinite(disc)
        disc_safe = np.where(covered, disc, 0.0)
        pos_fast = self.strategy.fast.positions_at(disc_safe)
        pos_slow = self.strategy.slow.positions_at(disc_safe)
        other = np.where(finder_is_fast[..., None], pos_slow, pos_fast)
        if self.notify_at_unit_speed:
            other_speed = np.ones_like(disc)
        else:
            other_speed = np.where(finder_is_fast,
                                   self.strategy.slow.max_speed,
                                   self.strategy.fast.max_speed)
        exit_pts = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1)
        dist = np.linalg.norm(other - exit_pts, axis=-1)
        evac = np.where(covered, disc_safe + dist / other_speed, np.inf)
        return disc, finder_is_fast, evac

    def evac_at(self, theta: float) -> float:
        return float(self.evaluate(np.array([normalize_angle(theta)]))[2][0])


def evac_time_for_exit(strategy: "Strategy",
                       exit_angle: float) -> tuple[float, str, float]:
    """(discovery_time, finder, evac_time) for one exit placement."""
    ev = StrategyEvaluator(strategy)
    disc, is_fast, evac = ev.evaluate(np.array([normalize_angle(exit_angle)]))
    if not np.isfinite(disc[0]):
        raise CoverageError(
            f"exit at angle {exit_angle} is never explored by {strategy.label}")
    return float(disc[0]), "fast" if is_fast[0] else "slow", float(evac[0])


def worst_case(strategy: "Strategy", grid_step: float = DEFAULT_GRID_STEP,
               refine_tol: float = DEFAULT_REFINE_TOL,
               notify_at_unit_speed: bool = False) -> WorstCase:
    """Adversary's maximum over exit angles: grid scan plus local refinement.

    The grid maximum cell (and its two neighbors) is refined by
    golden-section search until the bracket width drops below refine_tol.
    """
    if grid_step <= 0.0 or refine_tol <= 0.0:
        raise ValueError("grid_step and refine_tol must be positive")
    ev = StrategyEvaluator(strategy, notify_at_unit_speed=notify_at_unit_speed)
    thetas = np.arange(0.0, TWO_PI, grid_step)
    _, _, evac = ev.evaluate(thetas)
    if not np.isfinite(evac).all():
        raise CoverageError(
            f"strategy {strategy.label} does not cover the full boundary")
    i = int(np.argmax(evac))  # ties resolve to the smaller angle
    theta_star, evac_star = float(thetas[i]), float(evac[i])

    lo, hi = thetas[i] - grid_step, thetas[i] + grid_step
    theta_ref, evac_ref = golden_section_max(ev.evac_at, lo, hi, refine_tol)
    if evac_ref > evac_star:
        theta_star, evac_star = normalize_angle(theta_ref), evac_ref

    disc, is_fast, evac_final = ev.evaluate(np.array([theta_star]))
    return WorstCase(exit_angle=theta_star,
                     discovery_time=float(disc[0]),
                     finder="fast" if is_fast[0] else "slow",
                     evac_time=float(evac_final[0]),
                     grid_step_used=grid_step)


def strategy_explored_arcs(strategy: "Strategy", t: float) -> ArcSet:
    """Union of both robots' explored boundary arcs up to time t."""
    return explored_arcs(strategy.fast, t).union(
        explored_arcs(strategy.slow, t))


def max_unexplored_gap(explored: ArcSet) -> float:
    """Largest along-boundary separation between two unexplored points.

    Two unexplored points just outside the smallest maximal explored run
    (length g) are separated by 2*pi - g along the boundary on the side that
    avoids that run; that pair realizes the maximum. With nothing explored
    the supremum 2*pi is reported.
    """
    if explored.is_full:
        raise ValueError("boundary fully explored; no unexplored gap exists")
    if not explored.arcs:
        return TWO_PI
    runs = [b - a for a, b in explored.arcs]
    # an explored run wrapping through angle 0 is a single run
    if (len(explored.arcs) > 1 and explored.arcs[0][0] <= 1e-12
            and explored.arcs[-1][1] >= TWO_PI - 1e-12):
        wrapped = runs[0] + runs[-1]
        runs = [wrapped] + runs[1:-1]
    return TWO_PI - min(runs)
