"""High-level entry points shared by the CLI and the HTTP service."""

from __future__ import annotations

import numpy as np

from .oracles import CheckResult, kernel_comparison, run_verification_suite
from .params import PhysicalParams, PlanePoint
from .propagator import closed_form_kernel

SWEEP_PARAMS = ("dx", "time", "theta", "mass")
SWEEP_COLUMNS = ["theta", "mass", "time", "dx", "re_k", "im_k", "abs_k"]

KERNEL_COLUMNS = ["theta", "mass", "time", "x0", "y0", "xf", "yf", "re_k", "im_k", "abs_k"]
COMPARE_COLUMNS = KERNEL_COLUMNS + [
    "re_sliced",
    "im_sliced",
    "re_oracle",
    "im_oracle",
    "err_sliced_vs_closed",
    "err_oracle_vs_closed",
    "err_oracle_vs_sliced",
    "slices",
    "fock_dim",
]


def kernel_point(
    theta: float,
    mass: float,
    time: float,
    x0: float = 0.0,
    y0: float = 0.0,
    xf: float = 0.0,
    yf: float = 0.0,
    compare: bool = False,
    slices: int = 8,
    fock_dim: int = 32,
) -> dict:
    """Closed-form kernel at one configuration, optionally cross-checked.

    With ``compare`` set, also evaluates the n-slice fold and the
    superoperator oracle and reports pairwise relative errors.
    """
    params = PhysicalParams(mass=mass, theta=theta)
    start = PlanePoint(x0, y0, theta)
    end = PlanePoint(xf, yf, theta)
    value = closed_form_kernel(params, time, start, end)
    row = {
        "theta": theta,
        "mass": mass,
        "time": time,
        "x0": x0,
        "y0": y0,
        "xf": xf,
        "yf": yf,
        "re_k": value.real,
        "im_k": value.imag,
        "abs_k": abs(value),
    }
    if compare:
        comparison = kernel_comparison(params, time, start, end, slices, fock_dim)
        row.update(
            {
                "re_sliced": comparison["sliced"].real,
                "im_sliced": comparison["sliced"].imag,
                "re_oracle": comparison["superop_oracle"].real,
                "im_oracle": comparison["superop_oracle"].imag,
                "err_sliced_vs_closed": comparison["err_sliced_vs_closed"],
                "err_oracle_vs_closed": comparison["err_oracle_vs_closed"],
                "err_oracle_vs_sliced": comparison["err_oracle_vs_sliced"],
                "slices": slices,
                "fock_dim": fock_dim,
            }
        )
    return row


def sweep_rows(
    param: str,
    start: float,
    stop: float,
    count: int,
    theta: float = 1.0,
    mass: float = 1.0,
    time: float = 1.0,
    dx: float = 0.0,
) -> list[dict]:
    """One kernel evaluation per grid point of the swept parameter.

    The separation enters as a single length dx along the x axis from the
    origin.  Rows come back in grid order, deterministically.
    """
    if param not in SWEEP_PARAMS:
        raise ValueError(f"sweep parameter must be one of {SWEEP_PARAMS}, got {param!r}")
    if count < 1:
        raise ValueError(f"sweep needs at least one grid point, got count={count}")
    grid = np.linspace(start, stop, count)
    rows = []
    for value in grid:
        point = {"theta": theta, "mass": mass, "time": time, "dx": dx}
        point[param] = float(value)
        params = PhysicalParams(mass=point["mass"], theta=point["theta"])
        origin = PlanePoint(0.0, 0.0, point["theta"])
        target = PlanePoint(point["dx"], 0.0, point["theta"])
        kernel = closed_form_kernel(params, point["time"], origin, target)
        rows.append(
            {
                "theta": point["theta"],
                "mass": point["mass"],
                "time": point["time"],
                "dx": point["dx"],
                "re_k": kernel.real,
                "im_k": kernel.imag,
                "abs_k": abs(kernel),
            }
        )
    return rows


def verify(
    theta: float = 1.0,
    mass: float = 1.0,
    fock_dim: int = 32,
    tol: float = 1e-8,
    use_star: bool = True,
    checks: list[str] | None = None,
) -> list[CheckResult]:
    params = PhysicalParams(mass=mass, theta=theta)
    return run_verification_suite(
        params=params, fock_dim=fock_dim, tol=tol, use_star=use_star, checks=checks
    )
