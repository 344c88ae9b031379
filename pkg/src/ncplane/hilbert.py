"""The Hilbert space of Hilbert-Schmidt operators on truncated Fock space.

States are D x D complex arrays psi(xhat, yhat) with inner product
(phi, psi) = tr(phi^dag psi).  Position observables act by left
multiplication,

    X psi = xhat psi,    Y psi = yhat psi,

with xhat = sqrt(theta/2)(b + b^dag) and yhat = -i sqrt(theta/2)(b - b^dag),
while momenta act adjointly,

    Px psi = (1/theta) [yhat, psi],    Py psi = -(1/theta) [xhat, psi].

The complex combinations P = Px + i Py and its adjoint satisfy
P psi = -i sqrt(2/theta) [b, psi] and P^adj psi = i sqrt(2/theta) [b^dag, psi].

Truncation corrupts the outermost rows and columns, so algebraic
identities are exact only on the interior block (both indices < D - 2);
:func:`interior` extracts it.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from .fock import DEFAULT_TAIL_TOL, FockSpace, coherent_tail, coherent_vector, ladder_operators, min_fock_dim
from .params import MomentumPoint, PhysicalParams, TruncationError

INTERIOR_MARGIN = 2


def _check_square(psi: np.ndarray) -> int:
    psi = np.asarray(psi)
    if psi.ndim != 2 or psi.shape[0] != psi.shape[1]:
        raise ValueError(f"expected a square operator array, got shape {psi.shape}")
    return psi.shape[0]


def _check_same_dim(phi: np.ndarray, psi: np.ndarray) -> int:
    d1 = _check_square(phi)
    d2 = _check_square(psi)
    if d1 != d2:
        raise ValueError(f"operator dimensions differ: {d1} vs {d2}")
    return d1


def hs_inner(phi: np.ndarray, psi: np.ndarray) -> complex:
    """Trace inner product tr(phi^dag psi)."""
    _check_same_dim(phi, psi)
    return complex(np.vdot(phi, psi))


def hs_norm(psi: np.ndarray) -> float:
    return float(np.linalg.norm(psi))


def dagger(psi: np.ndarray) -> np.ndarray:
    """Hermitian conjugation on configuration space (plain conjugate transpose)."""
    _check_square(psi)
    return psi.conj().T.copy()


def superop_adjoint(op: np.ndarray) -> np.ndarray:
    """Adjoint of a D^2 x D^2 superoperator with respect to the trace inner product.

    Kept as a named operation distinct from :func:`dagger`: the two
    conjugations live on different spaces and must not be conflated.
    """
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square superoperator array, got shape {op.shape}")
    return op.conj().T.copy()


def interior(block: np.ndarray, margin: int = INTERIOR_MARGIN) -> np.ndarray:
    """Interior block (both indices < D - margin) where truncated identities hold."""
    d = _check_square(block)
    if d <= margin:
        raise ValueError(f"dimension {d} too small for interior margin {margin}")
    return block[: d - margin, : d - margin]


def x_matrix(params: PhysicalParams, space: FockSpace) -> np.ndarray:
    """xhat = sqrt(theta/2) (b + b^dag)."""
    params.require_noncommutative()
    lowering, raising = ladder_operators(space)
    return math.sqrt(params.theta / 2.0) * (lowering + raising)


def y_matrix(params: PhysicalParams, space: FockSpace) -> np.ndarray:
    """yhat = -i sqrt(theta/2) (b - b^dag)."""
    params.require_noncommutative()
    lowering, raising = ladder_operators(space)
    return -1j * math.sqrt(params.theta / 2.0) * (lowering - raising)


def _axis_matrix(axis: str, params: PhysicalParams, space: FockSpace) -> np.ndarray:
    if axis == "x":
        return x_matrix(params, space)
    if axis == "y":
        return y_matrix(params, space)
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def apply_position(axis: str, psi: np.ndarray, params: PhysicalParams) -> np.ndarray:
    """Left multiplication by xhat or yhat."""
    d = _check_square(psi)
    return _axis_matrix(axis, params, FockSpace(d)) @ psi


def apply_momentum(axis: str, psi: np.ndarray, params: PhysicalParams) -> np.ndarray:
    """Adjoint momentum action: Px = (1/theta)[yhat, .], Py = -(1/theta)[xhat, .]."""
    d = _check_square(psi)
    space = FockSpace(d)
    if axis == "x":
        yh = y_matrix(params, space)
        return (yh @ psi - psi @ yh) / params.theta
    if axis == "y":
        xh = x_matrix(params, space)
        return -(xh @ psi - psi @ xh) / params.theta
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def apply_b(psi: np.ndarray) -> np.ndarray:
    """Left multiplication by the lowering operator (eigen-action on position states)."""
    d = _check_square(psi)
    lowering, _ = ladder_operators(FockSpace(d))
    return lowering @ psi


def apply_b_adjoint(psi: np.ndarray) -> np.ndarray:
    """Left multiplication by the raising operator (trace-inner-product adjoint of apply_b)."""
    d = _check_square(psi)
    _, raising = ladder_operators(FockSpace(d))
    return raising @ psi


def apply_p(psi: np.ndarray, params: PhysicalParams) -> np.ndarray:
    """P psi = -i sqrt(2/theta) [b, psi]."""
    params.require_noncommutative()
    d = _check_square(psi)
    lowering, _ = ladder_operators(FockSpace(d))
    return -1j * math.sqrt(2.0 / params.theta) * (lowering @ psi - psi @ lowering)


def apply_p_adjoint(psi: np.ndarray, params: PhysicalParams) -> np.ndarray:
    """P^adj psi = i sqrt(2/theta) [b^dag, psi]."""
    params.require_noncommutative()
    d = _check_square(psi)
    _, raising = ladder_operators(FockSpace(d))
    return 1j * math.sqrt(2.0 / params.theta) * (raising @ psi - psi @ raising)


def position_state(
    z: complex,
    params: PhysicalParams,
    space: FockSpace,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> np.ndarray:
    """Rank-one position state |z><z| / sqrt(theta).

    Not unit-normalized: the self inner product is 1/theta by construction,
    and that normalization is kept as is.
    """
    params.require_noncommutative()
    v = coherent_vector(space, z, tail_tol)
    return np.outer(v, v.conj()) / math.sqrt(params.theta)


def momentum_state(
    p: MomentumPoint | complex,
    params: PhysicalParams,
    space: FockSpace,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> np.ndarray:
    """Momentum state sqrt(theta/2pi) exp(i sqrt(theta/2)(pbar b + p b^dag)).

    The generator is a displacement by alpha = i sqrt(theta/2) p, so the
    state occupies levels up to roughly |alpha|^2; the same Poisson tail
    gate as for coherent vectors protects the truncation.  Built by dense
    scaling-and-squaring matrix exponential, exact to roundoff at these
    dimensions.
    """
    params.require_noncommutative()
    pc = p.p if isinstance(p, MomentumPoint) else complex(p)
    alpha_sq = (params.theta / 2.0) * abs(pc) ** 2
    tail = coherent_tail(space.dim, alpha_sq)
    if tail > tail_tol:
        needed = min_fock_dim(alpha_sq, tail_tol)
        raise TruncationError(
            f"momentum displacement tail {tail:.3e} exceeds tolerance "
            f"{tail_tol:.3e} at dim {space.dim}; need dim >= {needed}",
            required_dim=needed,
        )
    lowering, raising = ladder_operators(space)
    gen = 1j * math.sqrt(params.theta / 2.0) * (np.conj(pc) * lowering + pc * raising)
    return math.sqrt(params.theta / (2.0 * math.pi)) * expm(gen)


def position_overlap(z: complex, w: complex, params: PhysicalParams) -> complex:
    """Analytic overlap of two position states: (1/theta) exp(-|z - w|^2)."""
    params.require_noncommutative()
    return complex(np.exp(-abs(complex(z) - complex(w)) ** 2) / params.theta)


def position_momentum_overlap(
    z: complex, p: MomentumPoint | complex, params: PhysicalParams
) -> complex:
    """Analytic overlap of a position bra with a momentum ket.

    (1/sqrt(2pi)) exp(-theta pbar p / 4) exp(i sqrt(theta/2)(p zbar + pbar z)).
    """
    params.require_noncommutative()
    pc = p.p if isinstance(p, MomentumPoint) else complex(p)
    z = complex(z)
    s = math.sqrt(params.theta / 2.0)
    return complex(
        np.exp(-params.theta * abs(pc) ** 2 / 4.0 + 1j * s * (pc * np.conj(z) + np.conj(pc) * z))
        / math.sqrt(2.0 * math.pi)
    )


def momentum_pair_weight(
    p: MomentumPoint | complex, p_prime: MomentumPoint | complex, params: PhysicalParams
) -> complex:
    """Gaussian weight multiplying the delta in the momentum-pair overlap.

    exp(-theta (pbar p + pbar' p')/4) exp(theta pbar p' / 2); equals 1 at
    coincidence.  The delta factor itself is never represented pointwise.
    """
    params.require_noncommutative()
    pc = p.p if isinstance(p, MomentumPoint) else complex(p)
    qc = p_prime.p if isinstance(p_prime, MomentumPoint) else complex(p_prime)
    th = params.theta
    return complex(
        np.exp(-th * (abs(pc) ** 2 + abs(qc) ** 2) / 4.0 + th * np.conj(pc) * qc / 2.0)
    )
