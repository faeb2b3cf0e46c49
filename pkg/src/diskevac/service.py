"""HTTP service exposing bounds, sweeps, constants, and simulation.

Thin wrapper over the core library; all numerical work happens in-process
and shares the module-level fast-chord cache.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import analysis, bounds, __version__
from ._optim import BracketError
from .geometry import TWO_PI
from .strategies import (ConstructionError, InfeasibleSystemError,
                         build_named, optimize_fast_chord)
from .worstcase import CoverageError, evac_time_for_exit, worst_case

app = FastAPI(title="diskevac", version=__version__)

_S_MAX = TWO_PI + 1.0


class HealthResponse(BaseModel):
    status: str
    version: str


class SimulateRequest(BaseModel):
    strategy: str = Field(pattern="^(bsp|half-chord|fast-chord)$")
    s: float = Field(ge=1.0, lt=_S_MAX)
    x3: float | None = None
    exit_angle: float | None = Field(
        default=None, description="evaluate one exit instead of the worst case")
    grid_step: float = Field(default=TWO_PI / 1e4, gt=0.0)


class SimulateResponse(BaseModel):
    strategy: str
    s: float
    exit_angle: float
    discovery_time: float
    finder: str
    evac_time: float
    worst_case: bool


class BoundsRequest(BaseModel):
    s: float = Field(ge=1.0, lt=_S_MAX)
    include_fast_chord: bool = False


class BoundsResponse(BaseModel):
    s: float
    ub_bsp: float | None
    ub_half_chord: float
    ub_fast_chord: float | None
    lb_fes: float
    lb_bes_original: float
    lb_bes_improved: float
    lb_bes_antipodal: float | None
    lb_overall: float
    ub_overall: float
    best_strategy: str
    ratio: float
    ses_worst_case: float


class ConstantEntry(BaseModel):
    value: float
    residual: float
    bracket: tuple[float, float]


class ConstantsResponse(BaseModel):
    constants: dict[str, ConstantEntry]


class SweepRequest(BaseModel):
    s_min: float = Field(ge=1.0)
    s_max: float = Field(lt=_S_MAX)
    s_step: float = Field(default=1e-2, gt=0.0)


class SweepResponse(BaseModel):
    rows: list[BoundsResponse]


def _numeric_guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (InfeasibleSystemError, ConstructionError, CoverageError,
            BracketError) as exc:
        raise HTTPException(status_code=422,
                            detail=f"numerical failure: {exc}") from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


class _InfiniteCache:
    """Stand-in cache that reports the fast-chord curve as unavailable."""

    def value(self, s: float) -> float:
        return math.inf


def _bounds_row(s: float, include_fast_chord: bool) -> BoundsResponse:
    cache = (analysis.default_fast_chord_cache() if include_fast_chord
             else _InfiniteCache())
    fc = cache.value(s)
    ub, label = analysis.ub_overall(s, cache)
    lb = analysis.lb_overall(s)
    return BoundsResponse(
        s=s,
        ub_bsp=bounds.ub_bsp(s) if s <= 2.0 else None,
        ub_half_chord=bounds.ub_half_chord(s),
        ub_fast_chord=fc if math.isfinite(fc) else None,
        lb_fes=bounds.lb_fes(s),
        lb_bes_original=bounds.lb_bes_original(s),
        lb_bes_improved=bounds.lb_bes_improved_value(s),
        lb_bes_antipodal=(bounds.lb_bes_antipodal(s)
                          if s > math.pi + 1.0 else None),
        lb_overall=lb,
        ub_overall=ub,
        best_strategy=label,
        ratio=ub / lb,
        ses_worst_case=bounds.ses_worst_case(),
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    def run() -> SimulateResponse:
        if req.strategy == "fast-chord" and req.x3 is None:
            best = optimize_fast_chord(req.s)
            strategy = build_named("fast-chord", req.s, best.x3_star)
        else:
            strategy = build_named(req.strategy, req.s, req.x3)
        if req.exit_angle is not None:
            disc, finder, evac = evac_time_for_exit(strategy, req.exit_angle)
            return SimulateResponse(
                strategy=strategy.label, s=req.s, exit_angle=req.exit_angle,
                discovery_time=disc, finder=finder, evac_time=evac,
                worst_case=False)
        wc = worst_case(strategy, grid_step=req.grid_step)
        return SimulateResponse(
            strategy=strategy.label, s=req.s, exit_angle=wc.exit_angle,
            discovery_time=wc.discovery_time, finder=wc.finder,
            evac_time=wc.evac_time, worst_case=True)

    return _numeric_guard(run)


@app.post("/bounds", response_model=BoundsResponse)
def bounds_at(req: BoundsRequest) -> BoundsResponse:
    return _numeric_guard(_bounds_row, req.s, req.include_fast_chord)


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest) -> SweepResponse:
    if req.s_min >= req.s_max:
        raise HTTPException(status_code=400, detail="need s_min < s_max")

    def run() -> SweepResponse:
        n = int(round((req.s_max - req.s_min) / req.s_step))
        grid = [min(req.s_min + i * req.s_step, req.s_max)
                for i in range(n + 1)]
        return SweepResponse(rows=[_bounds_row(s, False) for s in grid])

    return _numeric_guard(run)


@app.get("/constants", response_model=ConstantsResponse)
def constants() -> ConstantsResponse:
    def run() -> ConstantsResponse:
        consts = analysis.compute_constants()
        return ConstantsResponse(constants={
            name: ConstantEntry(value=res.s_star, residual=res.residual,
                                bracket=res.bracket)
            for name, res in consts.items()
        })

    return _numeric_guard(run)
