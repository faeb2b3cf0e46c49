"""Geometry primitives and time-parameterized robot paths on the unit disk.

Positions are exact within each motion primitive (analytic evaluation, no
time-stepping), so discovery times downstream are free of integration error.
Angles are kept normalized to [0, 2*pi); all angular arithmetic goes through
:func:`normalize_angle` to avoid sign-convention bugs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

TWO_PI = 2.0 * math.pi

# A robot "is on the boundary" iff its radius >= 1 - EPS_BOUNDARY.
EPS_BOUNDARY = 1e-9

# Arc intervals whose gap is below this are merged (numerically abutting).
EPS_MERGE = 1e-12

# Tolerance on the speed-bound and continuity invariants.
EPS_SPEED = 1e-12


def normalize_angle(a: float) -> float:
    """Map an angle to the canonical range [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:  # fmod can return exactly TWO_PI after the += above
        a -= TWO_PI
    return a


def chord_of_arc(arc: float) -> float:
    """Length of the chord subtending an arc of the unit circle.

    Raises ValueError for arc outside [0, 2*pi].
    """
    if not 0.0 <= arc <= TWO_PI + 1e-15:
        raise ValueError(f"arc must lie in [0, 2*pi], got {arc}")
    return 2.0 * math.sin(arc / 2.0)


def law_of_cosines(r1: float, r2: float, angle: float) -> float:
    """Third side of a triangle with sides r1, r2 and included angle.

    cos(2*pi - x) = cos(x), so reflex angles need no special casing.
    """
    if r1 < 0.0 or r2 < 0.0:
        raise ValueError(f"radii must be non-negative, got {r1}, {r2}")
    sq = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * math.cos(angle)
    return math.sqrt(max(sq, 0.0))


@dataclass(frozen=True)
class Point:
    """A point in unit-disk coordinates."""

    x: float
    y: float

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    @property
    def radius(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def angle(self) -> float:
        """Polar angle in [0, 2*pi)."""
        return normalize_angle(math.atan2(self.y, self.x))

    def on_boundary(self, eps: float = EPS_BOUNDARY) -> bool:
        return self.radius >= 1.0 - eps

    def rotated(self, angle: float) -> "Point":
        c, s = math.cos(angle), math.sin(angle)
        return Point(c * self.x - s * self.y, s * self.x + c * self.y)

    @staticmethod
    def on_circle(angle: float, radius: float = 1.0,
                  center: "Point | None" = None) -> "Point":
        cx, cy = (center.x, center.y) if center is not None else (0.0, 0.0)
        return Point(cx + radius * math.cos(angle), cy + radius * math.sin(angle))


ORIGIN = Point(0.0, 0.0)


@dataclass(frozen=True)
class Beeline:
    """Straight-line motion from `start` to `target` at constant speed."""

    start: Point
    target: Point
    speed: float

    def __post_init__(self) -> None:
        if self.speed <= 0.0:
            raise ValueError("beeline speed must be positive")

    @property
    def duration(self) -> float:
        return self.start.distance_to(self.target) / self.speed

    @property
    def end(self) -> Point:
        return self.target

    def point_at(self, tau: float) -> Point:
        d = self.start.distance_to(self.target)
        if d == 0.0:
            return self.start
        f = min(max(self.speed * tau / d, 0.0), 1.0)
        return Point(self.start.x + f * (self.target.x - self.start.x),
                     self.start.y + f * (self.target.y - self.start.y))

    def rotated(self, angle: float) -> "Beeline":
        return Beeline(self.start.rotated(angle), self.target.rotated(angle),
                       self.speed)


@dataclass(frozen=True)
class Arc:
    """Circular-arc motion at constant angular rate (positive = CCW)."""

    center: Point
    radius: float
    start_angle: float
    angular_rate: float
    duration: float

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise ValueError("arc radius must be positive")
        if self.duration < 0.0:
            raise ValueError("arc duration must be non-negative")

    @property
    def start(self) -> Point:
        return Point.on_circle(self.start_angle, self.radius, self.center)

    @property
    def end(self) -> Point:
        a = self.start_angle + self.angular_rate * self.duration
        return Point.on_circle(a, self.radius, self.center)

    @property
    def speed(self) -> float:
        return abs(self.angular_rate) * self.radius

    def point_at(self, tau: float) -> Point:
        tau = min(max(tau, 0.0), self.duration)
        a = self.start_angle + self.angular_rate * tau
        return Point.on_circle(a, self.radius, self.center)

    def rotated(self, angle: float) -> "Arc":
        return Arc(self.center.rotated(angle), self.radius,
                   self.start_angle + angle, self.angular_rate, self.duration)


@dataclass(frozen=True)
class Hold:
    """Stay at `point` for `duration`."""

    point: Point
    duration: float

    def __post_init__(self) -> None:
        if self.duration < 0.0:
            raise ValueError("hold duration must be non-negative")

    @property
    def start(self) -> Point:
        return self.point

    @property
    def end(self) -> Point:
        return self.point

    @property
    def speed(self) -> float:
        return 0.0

    def point_at(self, tau: float) -> Point:
        return self.point

    def rotated(self, angle: float) -> "Hold":
        return Hold(self.point.rotated(angle), self.duration)


MotionPrimitive = Union[Beeline, Arc, Hold]


@dataclass(frozen=True)
class ArcSet:
    """Disjoint, sorted angle intervals [a, b) on the unit circle.

    Intervals are normalized to [0, 2*pi); a full circle is the single
    interval (0, 2*pi). Intervals separated by less than EPS_MERGE are fused.
    """

    arcs: tuple[tuple[float, float], ...]

    @staticmethod
    def empty() -> "ArcSet":
        return ArcSet(())

    @staticmethod
    def from_intervals(intervals: Iterable[tuple[float, float]]) -> "ArcSet":
        """Build from (start_angle, length) pairs, any angles, any overlap."""
        pieces: list[tuple[float, float]] = []
        for a0, length in intervals:
            if length <= EPS_MERGE:
                continue
            if length >= TWO_PI - EPS_MERGE:
                return ArcSet(((0.0, TWO_PI),))
            a = normalize_angle(a0)
            b = a + length
            if b <= TWO_PI:
                pieces.append((a, b))
            else:
                pieces.append((a, TWO_PI))
                pieces.append((0.0, b - TWO_PI))
        if not pieces:
            return ArcSet(())
        pieces.sort()
        merged = [pieces[0]]
        for a, b in pieces[1:]:
            la, lb = merged[-1]
            if a <= lb + EPS_MERGE:
                merged[-1] = (la, max(lb, b))
            else:
                merged.append((a, b))
        # wrap-around fusion: last interval reaching 2*pi abutting the first at 0
        if (len(merged) > 1 and merged[0][0] <= EPS_MERGE
                and merged[-1][1] >= TWO_PI - EPS_MERGE):
            a0, b0 = merged.pop(0)
            la, lb = merged[-1]
            if lb - la + (b0 - a0) >= TWO_PI - EPS_MERGE:
                return ArcSet(((0.0, TWO_PI),))
            # keep the two pieces split at 0; representation stays canonical
            merged.insert(0, (a0, b0))
        return ArcSet(tuple(merged))

    @property
    def total_length(self) -> float:
        return sum(b - a for a, b in self.arcs)

    @property
    def is_full(self) -> bool:
        return self.total_length >= TWO_PI - EPS_MERGE

    def contains(self, angle: float, tol: float = 0.0) -> bool:
        a = normalize_angle(angle)
        return any(lo - tol <= a < hi + tol for lo, hi in self.arcs)

    def complement(self) -> "ArcSet":
        """Unexplored intervals (same [a, b) convention)."""
        if not self.arcs:
            return ArcSet(((0.0, TWO_PI),))
        if self.is_full:
            return ArcSet(())
        gaps = []
        for (a1, b1), (a2, _) in zip(self.arcs, self.arcs[1:]):
            if a2 > b1:
                gaps.append((b1, a2))
        first_a, _ = self.arcs[0]
        _, last_b = self.arcs[-1]
        if first_a > 0.0:
            gaps.insert(0, (0.0, first_a))
        if last_b < TWO_PI:
            gaps.append((last_b, TWO_PI))
        return ArcSet(tuple(gaps))

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet.from_intervals(
            [(a, b - a) for a, b in self.arcs]
            + [(a, b - a) for a, b in other.arcs])

    def covers(self, other: "ArcSet", tol: float = EPS_MERGE) -> bool:
        return all(
            any(lo - tol <= a and b <= hi + tol for lo, hi in self.arcs)
            for a, b in other.arcs)


@dataclass(frozen=True)
class Trajectory:
    """A robot's full movement schedule as a chain of motion primitives.

    Adjacent primitives must share endpoints and no primitive may exceed
    `max_speed`. Queries past the total duration clamp to the final position
    (the robot waits at the end of its schedule).
    """

    start: Point
    max_speed: float
    primitives: tuple[MotionPrimitive, ...]
    _starts: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.max_speed <= 0.0:
            raise ValueError("max_speed must be positive")
        pos = self.start
        t = 0.0
        starts = []
        for prim in self.primitives:
            if prim.start.distance_to(pos) > 1e-9:
                raise ValueError(
                    f"discontinuous trajectory: primitive starts at "
                    f"{prim.start}, previous segment ended at {pos}")
            if prim.speed > self.max_speed + EPS_SPEED + 1e-9:
                raise ValueError(
                    f"primitive speed {prim.speed} exceeds max {self.max_speed}")
            starts.append(t)
            t += prim.duration
            pos = prim.end
        object.__setattr__(self, "_starts", tuple(starts))

    @property
    def duration(self) -> float:
        return (self._starts[-1] + self.primitives[-1].duration
                if self.primitives else 0.0)

    @property
    def end(self) -> Point:
        return self.primitives[-1].end if self.primitives else self.start

    def position_at(self, t: float) -> Point:
        """Exact position at time t; clamps to [0, duration]."""
        if not self.primitives or t <= 0.0:
            return self.start
        for t0, prim in zip(reversed(self._starts), reversed(self.primitives)):
            if t >= t0:
                return prim.point_at(t - t0)
        return self.start

    def positions_at(self, times: np.ndarray) -> np.ndarray:
        """Vectorized position_at; returns an (n, 2) array."""
        times = np.asarray(times, dtype=float)
        out = np.empty(times.shape + (2,), dtype=float)
        out[..., 0] = self.start.x
        out[..., 1] = self.start.y
        for t0, prim in zip(self._starts, self.primitives):
            mask = times >= t0
            if not mask.any():
                continue
            tau = np.clip(times[mask] - t0, 0.0, prim.duration)
            if isinstance(prim, Beeline):
                d = prim.start.distance_to(prim.target)
                f = (prim.speed * tau / d) if d > 0.0 else np.zeros_like(tau)
                out[mask, 0] = prim.start.x + f * (prim.target.x - prim.start.x)
                out[mask, 1] = prim.start.y + f * (prim.target.y - prim.start.y)
            elif isinstance(prim, Arc):
                a = prim.start_angle + prim.angular_rate * tau
                out[mask, 0] = prim.center.x + prim.radius * np.cos(a)
                out[mask, 1] = prim.center.y + prim.radius * np.sin(a)
            else:
                out[mask, 0] = prim.point.x
                out[mask, 1] = prim.point.y
        return out

    def rotated(self, angle: float) -> "Trajectory":
        return Trajectory(self.start.rotated(angle), self.max_speed,
                          tuple(p.rotated(angle) for p in self.primitives))

    def boundary_arc_segments(
            self, eps: float = EPS_BOUNDARY
    ) -> list[tuple[float, float, float, float]]:
        """On-boundary arc sweeps as (t_start, duration, start_angle, rate).

        Only arcs concentric with the disk and of radius within eps of 1
        contribute; beelines and interior arcs touch the boundary in at most
        isolated points (see boundary_point_events).
        """
        segs = []
        for t0, prim in zip(self._starts, self.primitives):
            if (isinstance(prim, Arc) and prim.duration > 0.0
                    and prim.center.radius <= eps
                    and abs(prim.radius - 1.0) <= eps):
                segs.append((t0, prim.duration, prim.start_angle,
                             prim.angular_rate))
        return segs

    def boundary_point_events(
            self, eps: float = EPS_BOUNDARY) -> list[tuple[float, float]]:
        """Isolated boundary contacts as (time, angle) pairs.

        Covers beeline endpoints and holds lying on the boundary; arc
        endpoints are already part of their sweep.
        """
        events = []
        for t0, prim in zip(self._starts, self.primitives):
            if isinstance(prim, Beeline):
                if prim.start.on_boundary(eps):
                    events.append((t0, prim.start.angle))
                if prim.target.on_boundary(eps):
                    events.append((t0 + prim.duration, prim.target.angle))
            elif isinstance(prim, Hold) and prim.point.on_boundary(eps):
                events.append((t0, prim.point.angle))
        return events


def explored_arcs(traj: Trajectory, t: float,
                  eps_boundary: float = EPS_BOUNDARY) -> ArcSet:
    """Boundary angle intervals the robot has occupied during [0, t]."""
    if eps_boundary <= 0.0:
        raise ValueError("eps_boundary must be positive")
    intervals = []
    for t0, dur, a0, rate in traj.boundary_arc_segments(eps_boundary):
        if t <= t0:
            continue
        swept = abs(rate) * (min(t, t0 + dur) - t0)
        start = a0 if rate >= 0.0 else a0 - swept
        intervals.append((start, swept))
    return ArcSet.from_intervals(intervals)
