"""HTTP service exposing the checker, the two scans and the verification suites."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .channel import closed_form_asym, closed_form_ta, reduced_shrink_factors
from .errors import DegenerateInputError, DisentanglerError
from .frontier import (
    DEFAULT_ETA_X_GRID,
    DEFAULT_FIGURE2_PAIRS,
    DEFAULT_LAMBDA_SQ_GRID,
    BISECT_TOL,
    UniversalityGrid,
    eta_y_frontier,
    figure1_scan,
)
from .machine import MachineConfig
from .separability import conditions_asym, conditions_ta, ppt_verdict
from .states import TwoQubitPureState
from .verification import run_verification

app = FastAPI(title="disentangler", version=__version__)


@app.exception_handler(DisentanglerError)
async def _domain_error_handler(request: Request, exc: DisentanglerError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


class CheckRequest(BaseModel):
    alpha: float = Field(ge=0.0, le=1.0)
    eta_y: float = Field(gt=0.0, le=1.0)
    lambda_y: float = Field(default=0.0, ge=-1.0, le=1.0)
    eta_x: float | None = Field(default=None, gt=0.0, le=1.0)
    lambda_x: float = Field(default=0.0, ge=-1.0, le=1.0)
    tol: float = Field(default=1e-8, gt=0.0)


class ShrinkModel(BaseModel):
    eta_x: float
    eta_y: float
    residual_x: float
    residual_y: float


class CheckResponse(BaseModel):
    case: str
    matrix_real: list[list[float]]
    matrix_imag: list[list[float]]
    condition_values: list[float]
    conditions_satisfied: bool
    ppt: bool
    min_pt_eigenvalue: float
    shrink: ShrinkModel | None
    degenerate_sides: list[str]
    consistent: bool


@app.post("/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    st = TwoQubitPureState.from_alpha(req.alpha)
    cfg_y = MachineConfig(eta=req.eta_y, lam=req.lambda_y)
    if req.eta_x is None:
        rho = closed_form_ta(st, cfg_y)
        conds = conditions_ta(st.schmidt_product, cfg_y.eta, cfg_y.big_lambda)
    else:
        cfg_x = MachineConfig(eta=req.eta_x, lam=req.lambda_x)
        rho = closed_form_asym(st, cfg_x, cfg_y)
        conds = conditions_asym(st.schmidt_product, cfg_x, cfg_y)
    verdict = ppt_verdict(rho)
    shrink = None
    degenerate: list[str] = []
    try:
        fit = reduced_shrink_factors(st.density(), rho)
        shrink = ShrinkModel(
            eta_x=fit.eta_x, eta_y=fit.eta_y, residual_x=fit.residual_x, residual_y=fit.residual_y
        )
    except DegenerateInputError as exc:
        degenerate = list(exc.sides)
    consistent = not (conds.satisfied() and verdict.min_pt_eigenvalue < -req.tol)
    return CheckResponse(
        case=conds.case,
        matrix_real=rho.real.tolist(),
        matrix_imag=rho.imag.tolist(),
        condition_values=list(conds.values),
        conditions_satisfied=conds.satisfied(),
        ppt=verdict.ppt,
        min_pt_eigenvalue=verdict.min_pt_eigenvalue,
        shrink=shrink,
        degenerate_sides=degenerate,
        consistent=consistent,
    )


class Figure1Request(BaseModel):
    lambda_sq_values: list[float] | None = None
    grid_n: int = Field(default=2001, ge=2)
    refine_depth: int = Field(default=40, ge=0)


class Figure1Row(BaseModel):
    lambda_sq: float
    eta_max: float
    binding_s: float
    grid_n: int
    tol: float


class Figure1Response(BaseModel):
    rows: list[Figure1Row]


@app.post("/figure1", response_model=Figure1Response)
def figure1(req: Figure1Request) -> Figure1Response:
    grid = UniversalityGrid(n=req.grid_n, refine_depth=req.refine_depth)
    values = req.lambda_sq_values if req.lambda_sq_values is not None else list(DEFAULT_LAMBDA_SQ_GRID)
    rows = figure1_scan(sorted(values), grid=grid)
    return Figure1Response(
        rows=[
            Figure1Row(
                lambda_sq=r.abscissa,
                eta_max=r.ordinate,
                binding_s=r.binding_s,
                grid_n=r.metadata["grid_n"],
                tol=r.metadata["tol"],
            )
            for r in rows
        ]
    )


class Figure2Request(BaseModel):
    eta_x_values: list[float] | None = None
    pairs: list[tuple[float, float]] | None = None
    grid_n: int = Field(default=2001, ge=2)
    refine_depth: int = Field(default=40, ge=0)


class Figure2Row(BaseModel):
    lambda_x: float
    lambda_y: float
    eta_x: float
    eta_y_max: float
    binding_s: float


class Figure2Response(BaseModel):
    rows: list[Figure2Row]


@app.post("/figure2", response_model=Figure2Response)
def figure2(req: Figure2Request) -> Figure2Response:
    grid = UniversalityGrid(n=req.grid_n, refine_depth=req.refine_depth)
    pairs = req.pairs if req.pairs is not None else list(DEFAULT_FIGURE2_PAIRS)
    if not pairs:
        raise DisentanglerError("at least one (lambda_x, lambda_y) pair is required")
    etas = req.eta_x_values if req.eta_x_values is not None else list(DEFAULT_ETA_X_GRID)
    rows = []
    for lx, ly in pairs:
        for ex in etas:
            pt = eta_y_frontier(float(ex), float(lx), float(ly), grid=grid)
            rows.append(
                Figure2Row(
                    lambda_x=pt.lambda_x,
                    lambda_y=pt.lambda_y,
                    eta_x=pt.eta_x,
                    eta_y_max=pt.eta_y_max,
                    binding_s=pt.binding_s,
                )
            )
    return Figure2Response(rows=rows)


class VerifyRequest(BaseModel):
    suite: str = Field(default="quick", pattern="^(quick|full)$")
    seed: int = 0


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    return run_verification(suite=req.suite, seed=req.seed)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__, "bisect_tol": BISECT_TOL}
