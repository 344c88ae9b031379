"""HTTP facade over the kernel engine.

Run with: uvicorn ncplane.service:app
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .engine import kernel_point, sweep_rows, verify
from .params import TruncationError

app = FastAPI(
    title="ncplane",
    description="Free-particle propagation kernels on the noncommutative plane",
    version=__version__,
)


class KernelRequest(BaseModel):
    theta: float = Field(1.0, ge=0, description="noncommutativity scale, length^2")
    mass: float = Field(1.0, gt=0)
    time: float = Field(..., ge=0, description="total propagation time")
    x0: float = 0.0
    y0: float = 0.0
    xf: float = 0.0
    yf: float = 0.0
    compare: bool = False
    slices: int = Field(8, ge=0)
    fock_dim: int = Field(32, ge=4, le=64)


class KernelComparison(BaseModel):
    re_sliced: float
    im_sliced: float
    re_oracle: float
    im_oracle: float
    err_sliced_vs_closed: float
    err_oracle_vs_closed: float
    err_oracle_vs_sliced: float
    slices: int
    fock_dim: int


class KernelResponse(BaseModel):
    re_k: float
    im_k: float
    abs_k: float
    comparison: Optional[KernelComparison] = None


class SweepRequest(BaseModel):
    param: Literal["dx", "time", "theta", "mass"]
    start: float
    stop: float
    count: int = Field(..., ge=1, description="number of grid points")
    theta: float = Field(1.0, ge=0)
    mass: float = Field(1.0, gt=0)
    time: float = 1.0
    dx: float = 0.0


class SweepRow(BaseModel):
    theta: float
    mass: float
    time: float
    dx: float
    re_k: float
    im_k: float
    abs_k: float


class SweepResponse(BaseModel):
    rows: list[SweepRow]


class VerifyRequest(BaseModel):
    theta: float = Field(1.0, gt=0)
    mass: float = Field(1.0, gt=0)
    fock_dim: int = Field(32, ge=4, le=64)
    tol: float = Field(1e-8, gt=0, lt=1)
    use_star: bool = True
    checks: Optional[list[str]] = Field(
        None, description="restrict to a subset of named checks"
    )


class CheckModel(BaseModel):
    name: str
    summary: str
    value_re: float
    value_im: float
    target_re: float
    target_im: float
    error: float
    tolerance: float
    passed: bool


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/kernel", response_model=KernelResponse)
def kernel(request: KernelRequest) -> KernelResponse:
    try:
        row = kernel_point(**request.model_dump())
    except (ValueError, TruncationError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    comparison = None
    if request.compare:
        comparison = KernelComparison(
            re_sliced=row["re_sliced"],
            im_sliced=row["im_sliced"],
            re_oracle=row["re_oracle"],
            im_oracle=row["im_oracle"],
            err_sliced_vs_closed=row["err_sliced_vs_closed"],
            err_oracle_vs_closed=row["err_oracle_vs_closed"],
            err_oracle_vs_sliced=row["err_oracle_vs_sliced"],
            slices=row["slices"],
            fock_dim=row["fock_dim"],
        )
    return KernelResponse(
        re_k=row["re_k"], im_k=row["im_k"], abs_k=row["abs_k"], comparison=comparison
    )


@app.post("/sweep", response_model=SweepResponse)
def sweep(request: SweepRequest) -> SweepResponse:
    try:
        rows = sweep_rows(**request.model_dump())
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return SweepResponse(rows=[SweepRow(**row) for row in rows])


@app.post("/verify", response_model=VerifyResponse)
def run_verify(request: VerifyRequest) -> VerifyResponse:
    try:
        results = verify(**request.model_dump())
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    checks = [
        CheckModel(
            name=r.name,
            summary=r.summary,
            value_re=r.value.real,
            value_im=r.value.imag,
            target_re=r.target.real,
            target_im=r.target.imag,
            error=r.error,
            tolerance=r.tolerance,
            passed=r.passed,
        )
        for r in results
    ]
    return VerifyResponse(passed=all(r.passed for r in results), checks=checks)
