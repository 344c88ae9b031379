"""Physical parameters and phase-plane coordinates.

Natural units throughout: hbar = c = 1.  Positions are lengths, momenta
inverse lengths, and the noncommutativity scale theta is a length squared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class TruncationError(ValueError):
    """A truncated Fock space cannot represent the requested state.

    ``required_dim``, when known, is the smallest dimension that would
    satisfy the tail tolerance.
    """

    def __init__(self, message: str, required_dim: int | None = None):
        super().__init__(message)
        self.required_dim = required_dim


class DegenerateCompositionError(ValueError):
    """A Gaussian composition hit a vanishing resummation denominator."""


class NonIntegrableError(ValueError):
    """The quadratic form is not negative definite; the plane integral diverges."""


@dataclass(frozen=True)
class PhysicalParams:
    """Mass and noncommutativity scale of the plane.

    ``theta == 0`` is accepted only so the kernel algebra can evaluate its
    commutative limit; every operation that lives on the operator Hilbert
    space (Fock construction, states, star-integral measure) requires
    ``theta > 0`` and enforces it via :meth:`require_noncommutative`.
    """

    mass: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")
        if not (math.isfinite(self.theta) and self.theta >= 0):
            raise ValueError(f"theta must be nonnegative and finite, got {self.theta}")

    def require_noncommutative(self) -> None:
        if self.theta == 0:
            raise ValueError(
                "theta must be strictly positive for this operation; "
                "theta == 0 is only meaningful as a kernel limit"
            )


@dataclass(frozen=True)
class PlanePoint:
    """A point of the plane, carried both as lengths and dimensionless.

    The complex label is z = (x + i y) / sqrt(2 theta); the conversion is a
    bijection for fixed theta and round-trips to machine precision.
    """

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("coordinates must be finite")
        if not (math.isfinite(self.theta) and self.theta >= 0):
            raise ValueError(f"theta must be nonnegative and finite, got {self.theta}")

    @property
    def z(self) -> complex:
        if self.theta == 0:
            raise ValueError("the dimensionless label z is undefined at theta == 0")
        return (self.x + 1j * self.y) / math.sqrt(2.0 * self.theta)

    @classmethod
    def from_z(cls, z: complex, theta: float) -> "PlanePoint":
        z = complex(z)
        scale = math.sqrt(2.0 * theta)
        return cls(z.real * scale, z.imag * scale, theta)


@dataclass(frozen=True)
class MomentumPoint:
    """A momentum of the plane with complex combination p = px + i py."""

    px: float
    py: float

    def __post_init__(self):
        if not (math.isfinite(self.px) and math.isfinite(self.py)):
            raise ValueError("momentum components must be finite")

    @property
    def p(self) -> complex:
        return complex(self.px, self.py)

    @property
    def magnitude_sq(self) -> float:
        # pbar p = px^2 + py^2
        return self.px * self.px + self.py * self.py

    @classmethod
    def from_complex(cls, p: complex) -> "MomentumPoint":
        p = complex(p)
        return cls(p.real, p.imag)


def separation_sq(start: PlanePoint, end: PlanePoint) -> float:
    """Squared Euclidean separation (end - start)^2 in length^2."""
    if start.theta != end.theta:
        raise ValueError("endpoints carry different theta values")
    dx = end.x - start.x
    dy = end.y - start.y
    return dx * dx + dy * dy
