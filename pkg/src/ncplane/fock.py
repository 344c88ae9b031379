"""Truncated boson Fock space: ladder operators and coherent-state vectors.

The plane's configuration degrees of freedom are realized on the number
basis |0>, ..., |D-1>.  Coherent states concentrate on levels near |z|^2,
so every constructor gates on the exact Poisson tail mass beyond the
truncation and reports the dimension that would suffice when it is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .params import TruncationError

DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class FockSpace:
    """Truncation cutoff for the number basis."""

    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 2:
            raise ValueError(f"Fock dimension must be an integer >= 2, got {self.dim}")


def ladder_operators(space: FockSpace) -> tuple[np.ndarray, np.ndarray]:
    """Lowering and raising matrices on the truncated number basis.

    ``lowering[n-1, n] = sqrt(n)``; ``raising`` is its conjugate transpose.
    The commutator [lowering, raising] equals the identity on the first
    D-1 levels; the (D-1, D-1) entry picks up -(D-1).  That truncation
    artifact is deliberately left visible rather than patched, so that
    downstream convergence checks can see it.
    """
    d = space.dim
    lowering = np.zeros((d, d), dtype=complex)
    lowering[np.arange(d - 1), np.arange(1, d)] = np.sqrt(np.arange(1, d))
    return lowering, lowering.conj().T.copy()


def coherent_tail(dim: int, abs_z_sq: float) -> float:
    """Poisson(|z|^2) probability mass at or beyond level ``dim``."""
    if abs_z_sq == 0:
        return 0.0
    return float(gammainc(dim, abs_z_sq))


def min_fock_dim(abs_z_sq: float, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest dimension whose coherent tail mass is within tolerance.

    Starts from the generous estimate |z|^2 + 10 sqrt(|z|^2 + 1) + 20 and
    tightens with the exact tail.
    """
    guess = max(2, math.ceil(abs_z_sq + 10.0 * math.sqrt(abs_z_sq + 1.0) + 20.0))
    d = guess
    while d > 2 and coherent_tail(d - 1, abs_z_sq) <= tail_tol:
        d -= 1
    while coherent_tail(d, abs_z_sq) > tail_tol:
        d += 1
    return d


def coherent_vector(
    space: FockSpace, z: complex, tail_tol: float = DEFAULT_TAIL_TOL
) -> np.ndarray:
    """Number-basis amplitudes of the normalized coherent state.

    a_n = exp(-|z|^2 / 2) z^n / sqrt(n!), truncated at the space dimension.
    Raises :class:`TruncationError` when the discarded tail mass exceeds
    ``tail_tol``, reporting the minimum dimension that would suffice.
    """
    z = complex(z)
    lam = abs(z) ** 2
    tail = coherent_tail(space.dim, lam)
    if tail > tail_tol:
        needed = min_fock_dim(lam, tail_tol)
        raise TruncationError(
            f"coherent tail {tail:.3e} exceeds tolerance {tail_tol:.3e} at "
            f"dim {space.dim}; need dim >= {needed}",
            required_dim=needed,
        )
    amps = np.zeros(space.dim, dtype=complex)
    amps[0] = 1.0
    for n in range(1, space.dim):
        amps[n] = amps[n - 1] * z / math.sqrt(n)
    return amps * math.exp(-lam / 2.0)


def coherent_overlap(z: complex, w: complex) -> complex:
    """<z|w> = exp(-(|z|^2 + |w|^2)/2 + conj(z) w), with no truncation.

    The squared magnitude is exp(-|z - w|^2).
    """
    z = complex(z)
    w = complex(w)
    return complex(
        np.exp(-(abs(z) ** 2 + abs(w) ** 2) / 2.0 + np.conj(z) * w)
    )
