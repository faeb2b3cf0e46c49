"""Construction of the three evacuation strategies as trajectory pairs.

All strategies land at B = (1, 0); rotational symmetry of the disk means the
adversarial exit sweep covers every relative placement. Arcs are
counterclockwise unless stated otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._optim import bisect_root, scan_brackets, BracketError
from .geometry import (TWO_PI, Arc, Beeline, ORIGIN, Point, Trajectory)

POINT_B = Point(1.0, 0.0)

_ZERO = 1e-12


class InfeasibleSystemError(ValueError):
    """The chord system has no non-negative solution for this x3."""


class ConstructionError(ValueError):
    """A strategy cannot be built from the given parameters."""


@dataclass(frozen=True)
class Strategy:
    """A paired fast/slow schedule; the unit of adversarial evaluation."""

    s: float
    fast: Trajectory
    slow: Trajectory
    label: str

    def rotated(self, angle: float) -> "Strategy":
        return Strategy(self.s, self.fast.rotated(angle),
                        self.slow.rotated(angle), self.label)


@dataclass(frozen=True)
class HalfChordGeometry:
    """Derived measurements of the half-chord construction for s >= 2."""

    s: float
    oc: float            # |OC|
    phi: float           # angle BOC
    theta: float         # angle COM
    psi: float           # angle MOB
    arc_ba: float        # arc length B -> A (ccw)
    arc_cm: float        # path length of Slow's interior arc C -> M
    chord_ab: float      # |AB|
    half_chord_mb: float  # |MB| = |AM|

    @staticmethod
    def from_speed(s: float) -> "HalfChordGeometry":
        if s < 2.0:
            raise ValueError(f"half-chord geometry needs s >= 2, got {s}")
        acos = math.acos(-2.0 / s)
        return HalfChordGeometry(
            s=s,
            oc=2.0 / s,
            phi=math.pi + 0.5,
            theta=acos - 0.5,
            psi=math.pi - acos,
            arc_ba=2.0 * acos,
            arc_cm=(2.0 * acos - 1.0) / s,
            chord_ab=2.0 * math.sqrt(1.0 - 4.0 / (s * s)),
            half_chord_mb=math.sqrt(1.0 - 4.0 / (s * s)),
        )


def build_half_chord(s: float) -> Strategy:
    """Half-chord strategy: Fast sweeps the whole boundary, Slow cuts inside.

    For s >= 2 the exact s-dependent geometry is used. For 1 <= s < 2 the
    s = 2 paths are reused with Slow throttled to speed s/2, which stretches
    every switch time by 2/s.
    """
    if s < 1.0:
        raise ValueError(f"s must be >= 1, got {s}")

    fast = Trajectory(ORIGIN, s, (
        Beeline(ORIGIN, POINT_B, s),
        Arc(ORIGIN, 1.0, 0.0, s, TWO_PI / s),
    ))

    if s >= 2.0:
        geo = HalfChordGeometry.from_speed(s)
        point_c = Point.on_circle(geo.phi, geo.oc)
        slow_arc = Arc(ORIGIN, geo.oc, geo.phi, s / 2.0, geo.arc_cm)
        prims = [Beeline(ORIGIN, point_c, 1.0), slow_arc]
        if geo.half_chord_mb > _ZERO:
            prims.append(Beeline(slow_arc.end, POINT_B, 1.0))
        slow = Trajectory(ORIGIN, 1.0, tuple(prims))
    else:
        # s = 2 geometry, Slow at speed s/2: C on the boundary, arc to B
        half = s / 2.0
        phi = math.pi + 0.5
        point_c = Point.on_circle(phi, 1.0)
        slow = Trajectory(ORIGIN, half, (
            Beeline(ORIGIN, point_c, half),
            Arc(ORIGIN, 1.0, phi, half, (math.pi - 0.5) / half),
        ))

    return Strategy(s, fast, slow, "half-chord")


def build_bsp(s: float) -> Strategy:
    """Both-to-the-same-point: land at B, then split ccw (Fast) / cw (Slow).

    Trajectories extend to the meeting time 1 + (2*pi - s + 1)/(s + 1), when
    the whole boundary has been covered.
    """
    if s < 1.0:
        raise ValueError(f"s must be >= 1, got {s}")
    t_meet = 1.0 + (TWO_PI - s + 1.0) / (s + 1.0)
    fast = Trajectory(ORIGIN, s, (
        Beeline(ORIGIN, POINT_B, s),
        Arc(ORIGIN, 1.0, 0.0, s, t_meet - 1.0 / s),
    ))
    slow = Trajectory(ORIGIN, 1.0, (
        Beeline(ORIGIN, POINT_B, 1.0),
        Arc(ORIGIN, 1.0, 0.0, -1.0, t_meet - 1.0),
    ))
    return Strategy(s, fast, slow, "bsp")


@dataclass(frozen=True)
class FastChordSolution:
    """A non-negative solution (x1, x2, x3, y) of the chord system."""

    s: float
    x1: float
    x2: float
    x3: float
    y: float
    residual: float


@dataclass(frozen=True)
class FastChordBest:
    """Outcome of the x3 sweep: minimizing x3 and its worst-case time."""

    x3_star: float
    solution: FastChordSolution
    worst_time: float


def solve_fast_chord_system(s: float, x3: float) -> FastChordSolution:
    """Solve the fast-chord boundary-partition system for a fixed x3.

    Substituting x1 = 2*pi - s + 1 - y - x3 and x2 = 2*sin((x3 + y)/2) into
    the timing constraint x1 + x2 = s*y leaves a single transcendental
    equation in y, solved by bisection. Roots producing a negative x1 or x2
    are rejected; the smallest feasible root is returned.
    """
    if not 1.0 <= s < TWO_PI + 1.0:
        raise ValueError(f"s must lie in [1, 2*pi + 1), got {s}")
    span = TWO_PI - s + 1.0
    if x3 < -_ZERO or x3 > span + 1e-9:
        raise ValueError(f"x3 must lie in [0, {span:.6f}], got {x3}")
    x3 = min(max(x3, 0.0), span)
    y_max = span - x3

    def f(y: float) -> float:
        return span - x3 - y + 2.0 * math.sin((x3 + y) / 2.0) - s * y

    roots = []
    if y_max <= _ZERO:
        if abs(f(0.0)) <= 1e-8:
            roots.append(0.0)
    else:
        try:
            roots.append(bisect_root(f, 0.0, y_max, x_tol=1e-14, f_tol=1e-10))
        except BracketError:
            for lo, hi in scan_brackets(f, 0.0, y_max, n=1000):
                roots.append(bisect_root(f, lo, hi, x_tol=1e-14, f_tol=1e-10))

    for y in sorted(roots):
        x1 = span - x3 - y
        x2 = 2.0 * math.sin((x3 + y) / 2.0)
        if x1 >= -1e-9 and x2 >= -1e-9:
            x1, x2 = max(x1, 0.0), max(x2, 0.0)
            return FastChordSolution(s, x1, x2, x3, max(y, 0.0),
                                     abs(x1 + x2 - s * y))
    raise InfeasibleSystemError(
        f"no non-negative solution for s={s}, x3={x3}")


def build_fast_chord(s: float, sol: FastChordSolution) -> Strategy:
    """Fast-chord strategy from a solved partition.

    Fast: beeline to B, ccw arcs B->A->C, chord C->B, then a clockwise arc
    toward D until meeting Slow. Slow: beeline to C, then ccw along the
    boundary through D until the meeting at time 1 + y + x3/(s + 1).
    """
    if abs(sol.s - s) > 1e-9 or sol.residual > 1e-8:
        raise ConstructionError(f"solution is not valid for s={s}")
    if abs(sol.x1 + sol.y + sol.x3 + s - 1.0 - TWO_PI) > 1e-8:
        raise ConstructionError("solution does not partition the boundary")

    angle_c = s - 1.0 + sol.x1
    point_c = Point.on_circle(angle_c)
    t_tail = sol.x3 / (s + 1.0)

    fast_prims: list = [Beeline(ORIGIN, POINT_B, s)]
    pos_angle = 0.0
    if s - 1.0 > _ZERO:
        fast_prims.append(Arc(ORIGIN, 1.0, 0.0, s, (s - 1.0) / s))
        pos_angle = s - 1.0
    if sol.x1 > _ZERO:
        fast_prims.append(Arc(ORIGIN, 1.0, pos_angle, s, sol.x1 / s))
    if sol.x2 > _ZERO:
        fast_prims.append(Beeline(fast_prims[-1].end, POINT_B, s))
    if sol.x3 > _ZERO:
        fast_prims.append(Arc(ORIGIN, 1.0, TWO_PI, -s, t_tail))
    fast = Trajectory(ORIGIN, s, tuple(fast_prims))

    slow_prims: list = [Beeline(ORIGIN, point_c, 1.0)]
    if sol.y + t_tail > _ZERO:
        slow_prims.append(Arc(ORIGIN, 1.0, angle_c, 1.0, sol.y + t_tail))
    slow = Trajectory(ORIGIN, 1.0, tuple(slow_prims))

    return Strategy(s, fast, slow, "fast-chord")


def optimize_fast_chord(s: float, x3_step: float = 1e-2,
                        time_step: float = 1e-2) -> FastChordBest:
    """Sweep x3 over [0, 2*pi - s + 1] and keep the best worst case.

    Each feasible x3 is solved, built, and evaluated adversarially; the
    minimizer is returned with ties broken toward smaller x3. Evaluation
    charges the notified robot at unit speed, the convention under which the
    fast-chord comparison curves and crossover speeds are defined.
    """
    from .worstcase import worst_case

    if x3_step <= 0.0 or time_step <= 0.0:
        raise ValueError("x3_step and time_step must be positive")
    span = TWO_PI - s + 1.0
    grid = [i * x3_step for i in range(int(span / x3_step) + 1)]
    if grid[-1] < span - _ZERO:
        grid.append(span)

    best: FastChordBest | None = None
    for x3 in grid:
        try:
            sol = solve_fast_chord_system(s, x3)
            strat = build_fast_chord(s, sol)
        except (InfeasibleSystemError, ConstructionError):
            continue
        wc = worst_case(strat, grid_step=time_step,
                        refine_tol=time_step * 1e-2,
                        notify_at_unit_speed=True)
        if best is None or wc.evac_time < best.worst_time:
            best = FastChordBest(x3, sol, wc.evac_time)
    if best is None:
        raise InfeasibleSystemError(f"no feasible x3 for s={s}")
    return best


def build_named(name: str, s: float,
                x3: float | None = None) -> Strategy:
    """Build a strategy by CLI/service name ('bsp', 'half-chord', 'fast-chord')."""
    if name == "bsp":
        return build_bsp(s)
    if name == "half-chord":
        return build_half_chord(s)
    if name == "fast-chord":
        if x3 is None:
            best = optimize_fast_chord(s)
            x3 = best.x3_star
        return build_fast_chord(s, solve_fast_chord_system(s, x3))
    raise ValueError(f"unknown strategy {name!r}")
