"""Star-product calculus on Gaussian-exponential symbols.

A symbol is exp(v^T Q v) with v = (1, z, zbar, w, wbar), where z is the
active variable the star product acts on and w an optional spectator
endpoint carried along exactly.  Q is a complex symmetric 5x5 matrix whose
(0, 0) entry doubles as the log prefactor.  The class is closed under the
normal-ordered star product

    f * g = f exp(<-d_zbar  ->d_z) g

and under Gaussian integration over the active variable, which is what
makes the sliced kernel computable in closed form.

The closed form follows from summing the derivative series: with
A = (zbar^2 coefficient of f), B = (z^2 coefficient of g) and the affine
forms D = d_zbar(exponent of f), E = d_z(exponent of g),

    f * g = f g (1 - 4AB)^(-1/2) exp[(B D^2 + D E + A E^2) / (1 - 4AB)],

which reduces to f g exp(D E) on the slice class (A = B = 0) where no
square root, hence no branch tracking, ever appears.  The independent
series oracle :func:`star_series_oracle` exists to validate this closed
form rather than trust the derivation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .params import DegenerateCompositionError, NonIntegrableError, PhysicalParams

_NVARS = 5  # basis (1, z, zbar, w, wbar)
_DEGENERACY_TOL = 1e-13


def _symmetrize(q: np.ndarray) -> np.ndarray:
    return (q + q.T) / 2.0


@dataclass(frozen=True)
class GaussianSymbol:
    """exp(v^T Q v) over v = (1, z, zbar, w, wbar); z active, w spectator."""

    quad: np.ndarray = field(default_factory=lambda: np.zeros((_NVARS, _NVARS), dtype=complex))

    def __post_init__(self):
        q = np.asarray(self.quad, dtype=complex)
        if q.shape != (_NVARS, _NVARS):
            raise ValueError(f"quadratic form must be {_NVARS}x{_NVARS}, got {q.shape}")
        object.__setattr__(self, "quad", _symmetrize(q))

    # -- constructors -------------------------------------------------

    @classmethod
    def from_coefficients(
        cls,
        a: complex = 0.0,
        b: complex = 0.0,
        c: complex = 0.0,
        d: complex = 0.0,
        e: complex = 0.0,
        log_prefactor: complex = 0.0,
    ) -> "GaussianSymbol":
        """Active-variable symbol exp(a z^2 + b zbar^2 + c z zbar + d z + e zbar + log_prefactor)."""
        q = np.zeros((_NVARS, _NVARS), dtype=complex)
        q[0, 0] = log_prefactor
        q[1, 1] = a
        q[2, 2] = b
        q[1, 2] = q[2, 1] = c / 2.0
        q[0, 1] = q[1, 0] = d / 2.0
        q[0, 2] = q[2, 0] = e / 2.0
        return cls(q)

    @classmethod
    def constant(cls, value: complex) -> "GaussianSymbol":
        if value == 0:
            raise ValueError("the exponential symbol class cannot represent zero")
        return cls.from_coefficients(log_prefactor=np.log(complex(value)))

    @classmethod
    def gaussian_link(cls, prefactor: complex, width: complex, theta: float) -> "GaussianSymbol":
        """Slice symbol N exp[-width (x_w - x_z)^2] = N exp[-2 theta width (w - z)(wbar - zbar)].

        The active variable z is the shared endpoint to be starred or
        integrated over; the spectator w is the free endpoint.
        """
        if theta <= 0:
            raise ValueError("gaussian_link needs theta > 0 to relate lengths to labels")
        k = -2.0 * theta * complex(width)
        q = np.zeros((_NVARS, _NVARS), dtype=complex)
        q[0, 0] = np.log(complex(prefactor))
        # (w - z)(wbar - zbar) = w wbar - w zbar - z wbar + z zbar
        q[3, 4] = q[4, 3] = k / 2.0
        q[1, 2] = q[2, 1] = k / 2.0
        q[2, 3] = q[3, 2] = -k / 2.0
        q[1, 4] = q[4, 1] = -k / 2.0
        return cls(q)

    # -- views ---------------------------------------------------------

    @property
    def a(self) -> complex:
        return complex(self.quad[1, 1])

    @property
    def b(self) -> complex:
        return complex(self.quad[2, 2])

    @property
    def c(self) -> complex:
        return complex(2.0 * self.quad[1, 2])

    @property
    def d(self) -> complex:
        return complex(2.0 * self.quad[0, 1])

    @property
    def e(self) -> complex:
        return complex(2.0 * self.quad[0, 2])

    @property
    def log_prefactor(self) -> complex:
        return complex(self.quad[0, 0])

    def is_active_only(self, tol: float = 0.0) -> bool:
        """True when the symbol carries no spectator dependence."""
        spect = np.concatenate([self.quad[3:, :].ravel(), self.quad[:3, 3:].ravel()])
        return bool(np.max(np.abs(spect)) <= tol)

    def bind_spectator(self, w: complex) -> "GaussianSymbol":
        """Substitute a numeric spectator value, leaving an active-only symbol."""
        w = complex(w)
        s = np.array([w, np.conj(w)], dtype=complex)
        q = self.quad
        core = q[:3, :3].copy()
        cross = q[:3, 3:] @ s
        core[0, 0] += 2.0 * cross[0] + s @ q[3:, 3:] @ s
        core[0, 1] += cross[1]
        core[1, 0] = core[0, 1]
        core[0, 2] += cross[2]
        core[2, 0] = core[0, 2]
        out = np.zeros((_NVARS, _NVARS), dtype=complex)
        out[:3, :3] = core
        return GaussianSymbol(out)

    def evaluate(self, z, w: complex = 0.0):
        """Evaluate at active value(s) z with the spectator fixed at w.

        Accepts scalar or array z and broadcasts.
        """
        z = np.asarray(z, dtype=complex)
        w = complex(w)
        v = np.stack(
            [
                np.ones_like(z),
                z,
                np.conj(z),
                np.full_like(z, w),
                np.full_like(z, np.conj(w)),
            ]
        )
        expo = np.einsum("ij,i...,j...->...", self.quad, v, v)
        return np.exp(expo)

    @property
    def constant_value(self) -> complex:
        """Value of a fully contracted (variable-free) symbol."""
        rest = self.quad.copy()
        rest[0, 0] = 0.0
        if np.max(np.abs(rest)) > 1e-12:
            raise ValueError("symbol still depends on its variables")
        return complex(np.exp(self.quad[0, 0]))


def symbol_product(f: GaussianSymbol, g: GaussianSymbol) -> GaussianSymbol:
    """Plain pointwise product (the star product with all couplings dropped)."""
    return GaussianSymbol(f.quad + g.quad)


def star(f: GaussianSymbol, g: GaussianSymbol) -> GaussianSymbol:
    """Closed-form star product of two Gaussian symbols in the active variable.

    Both symbols' spectator slots refer to the same endpoint w.  Raises
    :class:`DegenerateCompositionError` when the resummation denominator
    1 - 4 (zbar^2 coeff of f)(z^2 coeff of g) vanishes.
    """
    a_coupling = f.quad[2, 2]  # zbar^2 coefficient of f
    b_coupling = g.quad[1, 1]  # z^2 coefficient of g
    den = 1.0 - 4.0 * a_coupling * b_coupling
    if abs(den) <= _DEGENERACY_TOL * (1.0 + 4.0 * abs(a_coupling * b_coupling)):
        raise DegenerateCompositionError(
            "degenerate star coupling: 1 - 4*f.b*g.a vanished "
            f"(f.b = {complex(a_coupling)}, g.a = {complex(b_coupling)})"
        )
    dv = 2.0 * f.quad[2, :]  # affine form d_zbar(exponent of f)
    ev = 2.0 * g.quad[1, :]  # affine form d_z(exponent of g)
    coupling = (
        b_coupling * np.outer(dv, dv)
        + 0.5 * (np.outer(dv, ev) + np.outer(ev, dv))
        + a_coupling * np.outer(ev, ev)
    )
    q = f.quad + g.quad + coupling / den
    q[0, 0] += -0.5 * np.log(den)  # principal branch; exact 1 on the slice class
    return GaussianSymbol(q)


# -- series oracle ----------------------------------------------------
#
# Derivatives of P(z, zbar) exp(F) with quadratic F stay of the form
# polynomial times exponential, so the series terms are computed by exact
# polynomial recursion; no finite differences anywhere.  Polynomials are
# dense coefficient arrays P[i, j] ~ z^i zbar^j.


def _poly_diff(p: np.ndarray, wrt: str) -> np.ndarray:
    out = np.zeros_like(p)
    if wrt == "z":
        out[:-1, :] = p[1:, :] * np.arange(1, p.shape[0])[:, None]
    else:
        out[:, :-1] = p[:, 1:] * np.arange(1, p.shape[1])[None, :]
    return out


def _poly_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    out = np.zeros((p.shape[0] + q.shape[0] - 1, p.shape[1] + q.shape[1] - 1), dtype=complex)
    for (i, j), coeff in np.ndenumerate(q):
        if coeff != 0:
            out[i : i + p.shape[0], j : j + p.shape[1]] += coeff * p
    return out


def _poly_eval(p: np.ndarray, z: complex) -> complex:
    zi = z ** np.arange(p.shape[0])
    zj = np.conj(z) ** np.arange(p.shape[1])
    return complex(zi @ p @ zj)


def _exponent_gradient_poly(sym: GaussianSymbol, wrt: str) -> np.ndarray:
    """d/dz or d/dzbar of the active-only exponent, as a linear polynomial."""
    lin = np.zeros((2, 2), dtype=complex)
    if wrt == "z":
        lin[0, 0] = sym.d
        lin[1, 0] = 2.0 * sym.a
        lin[0, 1] = sym.c
    else:
        lin[0, 0] = sym.e
        lin[0, 1] = 2.0 * sym.b
        lin[1, 0] = sym.c
    return lin


def star_series_oracle(
    f: GaussianSymbol, g: GaussianSymbol, point: complex, order: int
) -> complex:
    """Partial sum sum_{k<=order} (1/k!) d_zbar^k f(point) d_z^k g(point).

    Independent of the closed form: each derivative is generated by the
    exact polynomial-times-Gaussian recursion.  Converges to the closed
    form inside the series' convergence region; divergence shows up as
    non-decreasing term magnitudes, which is left to the caller to watch.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if not (f.is_active_only(1e-300) and g.is_active_only(1e-300)):
        raise ValueError("series oracle expects active-only symbols; bind spectators first")
    point = complex(point)
    lf = _exponent_gradient_poly(f, "zbar")
    lg = _exponent_gradient_poly(g, "z")
    qf = np.ones((1, 1), dtype=complex)
    qg = np.ones((1, 1), dtype=complex)
    fval = complex(f.evaluate(point))
    gval = complex(g.evaluate(point))
    total = 0.0 + 0.0j
    factorial = 1.0
    for k in range(order + 1):
        if k > 0:
            factorial *= k
            qf = _poly_diff(qf, "zbar") + _poly_mul(qf, lf)
            qg = _poly_diff(qg, "z") + _poly_mul(qg, lg)
        total += _poly_eval(qf, point) * _poly_eval(qg, point) / factorial
    return total * fval * gval


def polynomial_star(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Exact star product of two plain polynomials (coefficient arrays).

    The derivative series terminates for polynomials, so this is exact;
    it covers symbols like zbar or z that the exponential class cannot
    represent.
    """
    f = np.atleast_2d(np.asarray(f, dtype=complex))
    g = np.atleast_2d(np.asarray(g, dtype=complex))
    out = np.zeros((f.shape[0] + g.shape[0], f.shape[1] + g.shape[1]), dtype=complex)
    df, dg = f, g
    factorial = 1.0
    k = 0
    while np.any(df) and np.any(dg):
        term = _poly_mul(df, dg)
        out[: term.shape[0], : term.shape[1]] += term / factorial
        k += 1
        factorial *= k
        df = _poly_diff(df, "zbar")
        dg = _poly_diff(dg, "z")
    return out


def evaluate_polynomial(p: np.ndarray, z: complex) -> complex:
    """Evaluate a coefficient array P[i, j] ~ z^i zbar^j at a point."""
    return _poly_eval(np.atleast_2d(np.asarray(p, dtype=complex)), complex(z))


# -- Gaussian integration over the active variable --------------------


def _integrability_check(alpha: complex, beta: complex, gamma: complex) -> None:
    # real quadratic form of the exponent in (Re z, Im z):
    #   Re(a+b+c) x^2 + Re(c-a-b) y^2 - 2 Im(a-b) x y
    q11 = (alpha + beta + gamma).real
    q22 = (gamma - alpha - beta).real
    q12 = -(alpha - beta).imag
    if not (q11 < 0 and q11 * q22 - q12 * q12 > 0):
        raise NonIntegrableError(
            "quadratic form is not negative definite in the integration "
            f"variable (z^2: {alpha}, zbar^2: {beta}, z zbar: {gamma}); "
            "the plane integral diverges (delta-valued output must be smeared)"
        )


def star_integral(
    f: GaussianSymbol, g: GaussianSymbol, params: PhysicalParams
) -> GaussianSymbol:
    """Star the symbols, then integrate the active variable over the plane.

    The measure is theta dz dzbar / (2 pi) = dx dy / (2 pi).  The result is
    a Gaussian symbol in the spectator endpoint, returned with the
    spectator relabeled as the new active variable so compositions can be
    chained.  Raises :class:`NonIntegrableError` when the starred quadratic
    form is not negative definite.
    """
    params.require_noncommutative()
    h = star(f, g)
    q = h.quad
    alpha = complex(q[1, 1])
    beta = complex(q[2, 2])
    gamma = complex(2.0 * q[1, 2])
    _integrability_check(alpha, beta, gamma)
    disc = gamma * gamma - 4.0 * alpha * beta
    spect = [0, 3, 4]
    lz = 2.0 * q[1, spect]  # coefficient of z as an affine form in (1, w, wbar)
    lzb = 2.0 * q[2, spect]
    rest = q[np.ix_(spect, spect)].copy()
    rest += (
        beta * np.outer(lz, lz)
        + alpha * np.outer(lzb, lzb)
        - gamma * 0.5 * (np.outer(lz, lzb) + np.outer(lzb, lz))
    ) / disc
    # principal branch; continuous with -theta/gamma on the slice class
    rest[0, 0] += np.log(params.theta) - 0.5 * np.log(disc)
    out = np.zeros((_NVARS, _NVARS), dtype=complex)
    out[:3, :3] = rest
    return GaussianSymbol(out)
