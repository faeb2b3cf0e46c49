"""Two-robot wireless evacuation on the unit disk.

Strategy construction, adversarial worst-case evaluation, closed-form and
numeric bound curves, and the comparison analysis tying them together.
"""

from .geometry import (ArcSet, Arc, Beeline, Hold, Point, Trajectory,
                       chord_of_arc, explored_arcs, law_of_cosines,
                       normalize_angle, TWO_PI)
from .strategies import (FastChordBest, FastChordSolution, HalfChordGeometry,
                         Strategy, build_bsp, build_fast_chord,
                         build_half_chord, build_named, optimize_fast_chord,
                         solve_fast_chord_system)
from .worstcase import (StrategyEvaluator, WorstCase, evac_time_for_exit,
                        max_unexplored_gap, worst_case)
from . import analysis, bounds

__all__ = [
    "ArcSet", "Arc", "Beeline", "Hold", "Point", "Trajectory",
    "chord_of_arc", "explored_arcs", "law_of_cosines", "normalize_angle",
    "TWO_PI",
    "FastChordBest", "FastChordSolution", "HalfChordGeometry", "Strategy",
    "build_bsp", "build_fast_chord", "build_half_chord", "build_named",
    "optimize_fast_chord", "solve_fast_chord_system",
    "StrategyEvaluator", "WorstCase", "evac_time_for_exit",
    "max_unexplored_gap", "worst_case",
    "analysis", "bounds",
]

__version__ = "0.1.0"
