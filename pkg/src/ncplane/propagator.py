"""Time-sliced free propagation on the noncommutative plane.

The building block is a Gaussian slice N exp[-beta (dx)^2] between two
points of the plane.  A single step of duration tau has

    N = m / (m theta + i tau),    beta = m / (2 (m theta + i tau)),

finite even at tau = 0 because theta > 0 regularizes it.  Composing two
slices across a shared intermediate point (star product followed by the
plane integral dx dy) is again a slice:

    N' = N1 N2 pi / (beta1 Lambda),    beta' = beta1 gamma / Lambda,

with gamma = beta2 / beta1 and Lambda = 1 + gamma - 2 theta beta2.  All
prefactors combine rationally - no square roots, so no branch tracking.
The composition telescopes exactly, which is why the n-slice kernel equals
the closed form for every n, not just in the limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import DegenerateCompositionError, PhysicalParams, PlanePoint, separation_sq

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GaussianSlice:
    """Kernel segment N exp[-beta (dx)^2] as a (prefactor, width) pair."""

    prefactor: complex
    width: complex

    def evaluate(self, dx_sq: float) -> complex:
        return complex(self.prefactor * np.exp(-self.width * dx_sq))


@dataclass(frozen=True)
class SliceSchedule:
    """Uniform slicing: n_slices intermediate points, step tau, total (n+1) tau."""

    n_slices: int
    tau: float

    def __post_init__(self):
        if not isinstance(self.n_slices, (int, np.integer)) or self.n_slices < 0:
            raise ValueError(f"n_slices must be a nonnegative integer, got {self.n_slices}")
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive and finite, got {self.tau}")

    @property
    def total_time(self) -> float:
        return (self.n_slices + 1) * self.tau


@dataclass(frozen=True)
class CompositionFactors:
    """Intermediate quantities of a slice composition; recomputed per call."""

    gamma: complex
    lam: complex


def composition_factors(
    left: GaussianSlice, right: GaussianSlice, params: PhysicalParams
) -> CompositionFactors:
    gamma = right.width / left.width
    lam = 1.0 + gamma - 2.0 * params.theta * right.width
    return CompositionFactors(gamma=gamma, lam=lam)


def short_time_slice(params: PhysicalParams, tau: float) -> GaussianSlice:
    """Single propagation step of duration tau."""
    if not (math.isfinite(tau) and tau >= 0):
        raise ValueError(f"tau must be nonnegative and finite, got {tau}")
    denom = params.mass * params.theta + 1j * tau
    if denom == 0:
        raise ValueError("theta == 0 with tau == 0 is a genuinely divergent slice")
    return GaussianSlice(prefactor=params.mass / denom, width=params.mass / (2.0 * denom))


def compose(
    left: GaussianSlice, right: GaussianSlice, params: PhysicalParams
) -> GaussianSlice:
    """Integrate out the shared endpoint of two slices (measure dx dy, no 2 pi).

    Symmetric in its arguments.  Raises
    :class:`DegenerateCompositionError` when Lambda vanishes.
    """
    factors = composition_factors(left, right, params)
    scale = 1.0 + abs(factors.gamma) + 2.0 * params.theta * abs(right.width)
    if abs(factors.lam) <= 1e-12 * scale:
        raise DegenerateCompositionError(
            f"composition denominator Lambda = {factors.lam} vanished "
            f"(gamma = {factors.gamma}, theta*beta2 = {params.theta * right.width})"
        )
    width = left.width * factors.gamma / factors.lam
    if params.theta > 0 and not width.real > 0:
        raise DegenerateCompositionError(
            f"composed width {width} lost its positive real part at theta > 0"
        )
    prefactor = left.prefactor * right.prefactor * math.pi / (left.width * factors.lam)
    return GaussianSlice(prefactor=prefactor, width=width)


def sliced_kernel(
    params: PhysicalParams,
    schedule: SliceSchedule,
    start: PlanePoint,
    end: PlanePoint,
) -> complex:
    """Fold n+1 identical steps and evaluate at the endpoint separation.

    Includes the (1/2pi)^n path-integral measure.  The 1/2pi is divided
    out per composition rather than once at the end: mathematically
    identical, but the accumulated prefactor would overflow doubles near
    n ~ 385 otherwise.  The result is independent of n at fixed total
    time (the composition is exact).
    """
    _check_point_params(params, start, end)
    step = short_time_slice(params, schedule.tau)
    acc = step
    for _ in range(schedule.n_slices):
        acc = compose(step, acc, params)
        acc = GaussianSlice(prefactor=acc.prefactor / TWO_PI, width=acc.width)
    return acc.evaluate(separation_sq(start, end))


def closed_form_kernel(
    params: PhysicalParams, total_time: float, start: PlanePoint, end: PlanePoint
) -> complex:
    """The kernel m/(m theta + i T) exp[-m (dx)^2 / (2 (i T + m theta))].

    Finite at T = 0 for theta > 0, where it is a Gaussian of width
    sqrt(theta) instead of a delta: position resolution is cut off at the
    noncommutativity length.  At theta = 0 it is the commutative free
    kernel in the convention (m/iT) exp(i m dx^2 / 2T), which carries no
    1/2pi; only T = 0 together with theta = 0 is rejected as divergent.
    """
    if not (math.isfinite(total_time) and total_time >= 0):
        raise ValueError(f"total_time must be nonnegative and finite, got {total_time}")
    _check_point_params(params, start, end)
    denom = params.mass * params.theta + 1j * total_time
    if denom == 0:
        raise ValueError("theta == 0 with T == 0 is genuinely divergent")
    n = params.mass / denom
    return complex(n * np.exp(-(n / 2.0) * separation_sq(start, end)))


def kernel_magnitude_bound(params: PhysicalParams, total_time: float) -> float:
    """Upper bound m / sqrt(m^2 theta^2 + T^2) on |kernel|; attained at dx = 0."""
    return params.mass / math.hypot(params.mass * params.theta, total_time)


def commutative_kernel(mass: float, total_time: float, dx_sq: float) -> complex:
    """theta -> 0 limit target (m/iT) exp(i m dx^2 / (2T))."""
    if total_time <= 0:
        raise ValueError("the commutative kernel needs T > 0")
    return complex((mass / (1j * total_time)) * np.exp(1j * mass * dx_sq / (2.0 * total_time)))


def _check_point_params(params: PhysicalParams, start: PlanePoint, end: PlanePoint) -> None:
    if start.theta != params.theta or end.theta != params.theta:
        raise ValueError("endpoint theta does not match the parameter set")
