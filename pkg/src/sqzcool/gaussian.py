"""Exact Gaussian steady states of the reduced linear model.

Quadratures are X = (o + o+)/sqrt(2), Y = (o - o+)/(i sqrt(2)), stacked
as (X_a, Y_a, X_b, Y_b), so vacuum has covariance I/2 and occupancies
read off the diagonal as n = (V_XX + V_YY - 1)/2.

The steady covariance solves the Lyapunov equation A V + V A^T + D = 0.
It is solved directly through the 16x16 vectorized linear system; the
relative residual and the uncertainty-principle check below are hard
gates, not diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, UnstableSystemError
from .model import ReducedParams

__all__ = [
    "STABILITY_MARGIN",
    "RESIDUAL_TOL",
    "PHYSICALITY_TOL",
    "GaussianSteadyState",
    "build_drift",
    "build_diffusion",
    "symplectic_form",
    "stability",
    "steady_state",
]

#: Re(eigenvalue) must sit below -STABILITY_MARGIN * omega_m.
STABILITY_MARGIN = 1e-9

#: Hard gate on ||A V + V A^T + D||_F / ||D||_F.
RESIDUAL_TOL = 1e-9

#: Allowed negative slack on eigenvalues of V + (i/2) Omega and on n.
PHYSICALITY_TOL = 1e-8


@dataclass(frozen=True)
class GaussianSteadyState:
    """Steady covariance and the numbers read off it.

    ``covariance`` is the symmetrized 4x4 matrix in (X_a, Y_a, X_b, Y_b)
    order; ``n_a`` / ``n_b`` are the optical and mechanical occupancies;
    ``max_real_eig`` is the stability margin of the drift; ``residual``
    the relative Lyapunov residual actually achieved.
    """

    covariance: np.ndarray
    n_a: float
    n_b: float
    max_real_eig: float
    residual: float
    stable: bool = True


def build_drift(params: ReducedParams) -> np.ndarray:
    """Quadrature drift matrix of the linearized dynamics."""
    two_eps = 2.0 * params.eps_mag
    cos_p = math.cos(params.eps_phase)
    sin_p = math.sin(params.eps_phase)
    half_k = 0.5 * params.kappa
    half_g = 0.5 * params.gamma
    two_g = 2.0 * params.g_coupling
    return np.array([
        [-half_k + two_eps * sin_p, params.delta - two_eps * cos_p, 0.0, 0.0],
        [-params.delta - two_eps * cos_p, -half_k - two_eps * sin_p,
         -two_g, 0.0],
        [0.0, 0.0, -half_g, params.omega_m],
        [-two_g, 0.0, -params.omega_m, -half_g],
    ])


def build_diffusion(params: ReducedParams) -> np.ndarray:
    """Quadrature diffusion matrix for the squeezed-input environment.

    The optical block has determinant kappa^2/4 for any bath (squeezing
    rotates and skews it but keeps it minimum-uncertainty); the
    mechanical block is the thermal gamma (n_th + 1/2) I.
    """
    bath = params.bath
    n_half = bath.n_s + 0.5
    m_s = bath.m_s
    cos2 = math.cos(2.0 * bath.phi_s)
    sin2 = math.sin(2.0 * bath.phi_s)
    k = params.kappa
    mech = params.gamma * (params.n_th + 0.5)
    return np.array([
        [k * (n_half + m_s * cos2), -k * m_s * sin2, 0.0, 0.0],
        [-k * m_s * sin2, k * (n_half - m_s * cos2), 0.0, 0.0],
        [0.0, 0.0, mech, 0.0],
        [0.0, 0.0, 0.0, mech],
    ])


def symplectic_form() -> np.ndarray:
    """Symplectic form Omega in the (X, Y) x (a, b) ordering."""
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((4, 4))
    out[:2, :2] = j
    out[2:, 2:] = j
    return out


def stability(params: ReducedParams) -> tuple[bool, float]:
    """Strict stability of the drift.

    Returns (stable, max real eigenvalue part).  Stable means every
    eigenvalue sits below -STABILITY_MARGIN * omega_m, so marginal
    points count as unstable.
    """
    margin = float(np.max(np.linalg.eigvals(build_drift(params)).real))
    return margin < -STABILITY_MARGIN * params.omega_m, margin


def steady_state(params: ReducedParams) -> GaussianSteadyState:
    """Exact steady covariance of the linearized model.

    Raises
    ------
    UnstableSystemError
        If the drift fails the strict stability margin; the error
        carries the offending eigenvalue real part.
    NumericalError
        If the solved covariance misses the residual gate, violates the
        uncertainty principle beyond PHYSICALITY_TOL, or contains
        non-finite entries.
    """
    stable, margin = stability(params)
    if not stable:
        raise UnstableSystemError(
            f"drift matrix unstable: max Re(eig) = {margin:.6g} "
            f"(needs < {-STABILITY_MARGIN * params.omega_m:.1e})",
            max_real_eig=margin)

    drift = build_drift(params)
    diff = build_diffusion(params)
    eye = np.eye(4)
    system = np.kron(drift, eye) + np.kron(eye, drift)
    try:
        cov = np.linalg.solve(system, -diff.reshape(-1)).reshape(4, 4)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Lyapunov solve failed: {exc}") from exc
    cov = 0.5 * (cov + cov.T)

    if not np.all(np.isfinite(cov)):
        raise NumericalError("Lyapunov solve produced non-finite covariance")
    residual = float(np.linalg.norm(drift @ cov + cov @ drift.T + diff)
                     / np.linalg.norm(diff))
    if not residual <= RESIDUAL_TOL:
        raise NumericalError(
            f"Lyapunov residual {residual:.3e} exceeds {RESIDUAL_TOL:.1e}")

    heisenberg = cov + 0.5j * symplectic_form()
    min_eig = float(np.min(np.linalg.eigvalsh(heisenberg)))
    if min_eig < -PHYSICALITY_TOL:
        raise NumericalError(
            f"covariance violates the uncertainty principle: "
            f"min eig(V + i Omega / 2) = {min_eig:.3e}")

    n_a = float(0.5 * (cov[0, 0] + cov[1, 1] - 1.0))
    n_b = float(0.5 * (cov[2, 2] + cov[3, 3] - 1.0))
    if n_a < -PHYSICALITY_TOL or n_b < -PHYSICALITY_TOL:
        raise NumericalError(
            f"negative occupancy beyond tolerance: n_a = {n_a:.3e}, "
            f"n_b = {n_b:.3e}")
    return GaussianSteadyState(covariance=cov, n_a=n_a, n_b=n_b,
                               max_real_eig=margin, residual=residual)
