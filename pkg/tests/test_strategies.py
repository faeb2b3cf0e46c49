import math

import pytest

from diskevac.geometry import TWO_PI, Point, explored_arcs
from diskevac.strategies import (FastChordSolution, HalfChordGeometry,
                                 InfeasibleSystemError, POINT_B,
                                 build_bsp, build_fast_chord,
                                 build_half_chord, build_named,
                                 solve_fast_chord_system)


class TestHalfChordGeometry:
    def test_s4_measurements(self):
        geo = HalfChordGeometry.from_speed(4.0)
        acos = math.acos(-0.5)
        assert geo.oc == pytest.approx(0.5)
        assert geo.arc_ba == pytest.approx(2.0 * acos)
        assert geo.chord_ab == pytest.approx(2.0 * math.sqrt(0.75))
        assert geo.half_chord_mb == pytest.approx(math.sqrt(0.75))
        assert geo.phi == pytest.approx(math.pi + 0.5)
        # going C -> M -> B spans the rest of the circle after angle BOC
        assert geo.theta + geo.psi == pytest.approx(TWO_PI - geo.phi)

    def test_rejects_small_s(self):
        with pytest.raises(ValueError):
            HalfChordGeometry.from_speed(1.9)


@pytest.mark.parametrize("s", [2.0, 2.5, 3.0, 4.0, 6.0])
class TestHalfChordPropositions:
    def test_fast_at_a_when_slow_at_m(self, s):
        """Fast reaches the chord endpoint A exactly when Slow reaches its
        midpoint M."""
        strat = build_half_chord(s)
        geo = HalfChordGeometry.from_speed(s)
        t_a = (1.0 + geo.arc_ba) / s
        a = Point.on_circle(geo.arc_ba)
        m = Point.on_circle(math.pi + math.acos(-2.0 / s), geo.oc)
        assert strat.fast.position_at(t_a).distance_to(a) < 1e-9
        assert strat.slow.position_at(t_a).distance_to(m) < 1e-9

    def test_fast_finishes_boundary_before_slow_reaches_b(self, s):
        strat = build_half_chord(s)
        t_full = (1.0 + TWO_PI) / s
        assert strat.fast.duration == pytest.approx(t_full)
        assert explored_arcs(strat.fast, t_full).is_full
        assert strat.slow.duration >= t_full - 1e-12
        assert strat.slow.end.distance_to(POINT_B) < 1e-9

    def test_slow_never_exceeds_unit_speed(self, s):
        for prim in build_half_chord(s).slow.primitives:
            assert prim.speed <= 1.0 + 1e-12


class TestHalfChordSlowSpeeds:
    """For 1 <= s < 2 the s = 2 paths are reused with Slow throttled."""

    @pytest.mark.parametrize("s", [1.0, 1.3, 1.7])
    def test_scaled_construction(self, s):
        strat = build_half_chord(s)
        assert strat.slow.max_speed == pytest.approx(s / 2.0)
        assert strat.fast.duration == pytest.approx((1.0 + TWO_PI) / s)
        # Slow lands at the s = 2 touch point, stretched in time by 2/s
        c = Point.on_circle(math.pi + 0.5)
        assert strat.slow.position_at(2.0 / s).distance_to(c) < 1e-9
        assert strat.slow.end.distance_to(POINT_B) < 1e-9

    def test_rejects_sub_unit_speed(self):
        with pytest.raises(ValueError):
            build_half_chord(0.5)


class TestBsp:
    @pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
    def test_meeting_and_coverage(self, s):
        strat = build_bsp(s)
        t_meet = 1.0 + (TWO_PI - s + 1.0) / (s + 1.0)
        p = strat.fast.position_at(t_meet)
        q = strat.slow.position_at(t_meet)
        assert p.distance_to(q) < 1e-9
        joint = explored_arcs(strat.fast, t_meet).union(
            explored_arcs(strat.slow, t_meet))
        assert joint.is_full

    def test_split_directions(self):
        strat = build_bsp(1.5)
        t = 1.0 + 0.3
        assert strat.fast.position_at(t).angle < math.pi      # ccw from B
        assert strat.slow.position_at(t).angle > math.pi      # cw from B


class TestFastChordSystem:
    @pytest.mark.parametrize("s,x3", [(1.0, 0.0), (1.5, 1.0), (2.0, 0.5),
                                      (3.0, 2.0)])
    def test_solution_satisfies_all_three_equations(self, s, x3):
        sol = solve_fast_chord_system(s, x3)
        span = TWO_PI - s + 1.0
        assert sol.x1 + sol.y + sol.x3 == pytest.approx(span, abs=1e-9)
        assert sol.x2 == pytest.approx(
            2.0 * math.sin((sol.x3 + sol.y) / 2.0), abs=1e-9)
        assert sol.x1 + sol.x2 == pytest.approx(s * sol.y, abs=1e-8)
        assert min(sol.x1, sol.x2, sol.x3, sol.y) >= 0.0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            solve_fast_chord_system(0.5, 0.0)
        with pytest.raises(ValueError):
            solve_fast_chord_system(2.0, 100.0)

    def test_infeasible_x3(self):
        # x3 equal to the whole remaining span forces y = 0, which cannot
        # satisfy the timing equation unless the chord degenerates
        with pytest.raises(InfeasibleSystemError):
            solve_fast_chord_system(1.5, TWO_PI - 0.5)


class TestFastChordBuild:
    @pytest.mark.parametrize("s,x3", [(1.5, 1.0), (2.0, 0.5), (2.5, 1.5)])
    def test_robots_meet_at_schedule_end(self, s, x3):
        sol = solve_fast_chord_system(s, x3)
        strat = build_fast_chord(s, sol)
        t_end = 1.0 + sol.y + sol.x3 / (s + 1.0)
        assert strat.fast.duration == pytest.approx(t_end, abs=1e-9)
        assert strat.slow.duration == pytest.approx(t_end, abs=1e-9)
        p = strat.fast.position_at(t_end)
        q = strat.slow.position_at(t_end)
        assert p.distance_to(q) < 1e-8

    @pytest.mark.parametrize("s,x3", [(1.5, 1.0), (2.5, 1.5)])
    def test_joint_coverage_is_full(self, s, x3):
        sol = solve_fast_chord_system(s, x3)
        strat = build_fast_chord(s, sol)
        t_end = strat.fast.duration
        joint = explored_arcs(strat.fast, t_end).union(
            explored_arcs(strat.slow, t_end))
        assert joint.total_length == pytest.approx(TWO_PI, abs=1e-9)

    def test_rejects_mismatched_solution(self):
        sol = solve_fast_chord_system(2.0, 0.5)
        bogus = FastChordSolution(s=2.0, x1=sol.x1 + 0.5, x2=sol.x2,
                                  x3=sol.x3, y=sol.y, residual=0.0)
        with pytest.raises(ValueError):
            build_fast_chord(2.0, bogus)


class TestBuildNamed:
    def test_known_names(self):
        assert build_named("bsp", 1.5).label == "bsp"
        assert build_named("half-chord", 3.0).label == "half-chord"
        assert build_named("fast-chord", 2.0, 0.5).label == "fast-chord"

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            build_named("zigzag", 2.0)

    def test_rotated_strategy(self):
        strat = build_bsp(1.5).rotated(1.0)
        assert strat.fast.position_at(1.0 / 1.5).angle == pytest.approx(1.0)
