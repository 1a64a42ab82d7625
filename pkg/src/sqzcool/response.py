"""Frequency-domain engine: susceptibility, force spectrum, rates.

Single code path for every scheme: the general two-resource expression
is always evaluated, and :func:`sqzcool.model.apply_scheme` zeroes
whatever a scheme is not allowed to use.  The scheme-specific closed
forms exist only in the test suite, as oracles.

With chi(omega) = 1 / (-i (omega - delta) + kappa / 2), the spectral
density of the radiation-pressure force on the mechanics is

    S(omega) = S0(omega) * | [1 + 2i conj(eps) conj(chi(omega))]
                             * chi(-omega) * sinh(r_s) * e^{-2i phi_s}
                           + [1 - 2i eps chi(-omega)]
                             * conj(chi(omega)) * cosh(r_s) |^2

    S0(omega) = g^2 kappa / |1 - 4 |eps|^2 chi(omega) conj(chi(-omega))|^2

Cooling and heating rates are this spectrum at +omega_m and -omega_m.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateParameterError,
    InfeasibleSuppressionError,
    InvalidParameterError,
    NearThresholdError,
    SingularityError,
)
from .model import RateSet, ReducedParams, Scheme, SqueezedBath, apply_scheme

__all__ = [
    "NEAR_THRESHOLD_FLOOR",
    "SpectrumPoint",
    "SuppressionSolution",
    "chi",
    "spectrum",
    "scan_spectrum",
    "rates",
    "solve_suppression",
    "stokes_zero_eps",
    "parametric_threshold",
]

#: Hard floor for |1 - 4 |eps|^2 chi chi*|^2; below this the spectrum is
#: amplified round-off and the evaluation refuses.
NEAR_THRESHOLD_FLOOR = 1e-30


@dataclass(frozen=True)
class SpectrumPoint:
    """One spectrum sample; ``error`` is set when evaluation failed."""

    omega: float
    s_ff: float
    error: str | None = None


@dataclass(frozen=True)
class SuppressionSolution:
    """Input-squeezing settings that null the heating rate.

    ``rhs_modulus`` is the tanh(r_s) target; feasible iff it is < 1.
    When infeasible, r_s and phi_s are NaN and ``bath()`` raises.
    """

    r_s: float
    phi_s: float
    feasible: bool
    rhs_modulus: float

    def bath(self) -> SqueezedBath:
        if not self.feasible:
            raise InfeasibleSuppressionError(
                "no real squeezing amplitude nulls the heating rate here "
                f"(required tanh r_s = {self.rhs_modulus:.6g} >= 1)",
                rhs_modulus=self.rhs_modulus)
        return SqueezedBath(r_s=self.r_s, phi_s=self.phi_s)


def chi(omega: float, params: ReducedParams) -> complex:
    """Cavity susceptibility 1 / (-i (omega - delta) + kappa / 2)."""
    if params.kappa == 0.0 and omega == params.delta:
        raise SingularityError(
            f"susceptibility pole: kappa = 0 and omega = delta = {omega}")
    return 1.0 / complex(0.5 * params.kappa, -(omega - params.delta))


def parametric_threshold(params: ReducedParams) -> float:
    """Instability boundary for |eps|: sqrt(delta^2 + kappa^2/4) / 2."""
    return 0.5 * math.hypot(params.delta, 0.5 * params.kappa)


def _raw_spectrum(omega: float, params: ReducedParams) -> float:
    """General force spectrum, no scheme applied.  Units of omega_m."""
    c_pos = chi(omega, params)
    c_neg = chi(-omega, params)
    eps = params.eps
    gain_den = 1.0 - 4.0 * params.eps_mag ** 2 * c_pos * c_neg.conjugate()
    den_sq = abs(gain_den) ** 2
    if den_sq < NEAR_THRESHOLD_FLOOR:
        raise NearThresholdError(
            f"parametric-gain denominator {den_sq:.3e} below floor at "
            f"omega = {omega}")
    bath = params.bath
    amp = ((1.0 + 2.0j * eps.conjugate() * c_pos.conjugate()) * c_neg
           * math.sinh(bath.r_s) * cmath.exp(-2.0j * bath.phi_s)
           + (1.0 - 2.0j * eps * c_neg) * c_pos.conjugate()
           * math.cosh(bath.r_s))
    return params.g_coupling ** 2 * params.kappa * abs(amp) ** 2 / den_sq


def spectrum(omega: float, params: ReducedParams,
             scheme: Scheme = Scheme.ESIS) -> SpectrumPoint:
    """Force spectral density at one frequency.

    The scheme tag only strips the disallowed resources from ``params``
    before the one general expression runs.

    Raises
    ------
    SingularityError
        Exactly at the lossless-cavity pole (kappa = 0, omega = delta).
    NearThresholdError
        When the parametric denominator underflows the hard floor.
    """
    omega = float(omega)
    if not math.isfinite(omega):
        raise InvalidParameterError(f"omega must be finite, got {omega!r}")
    value = _raw_spectrum(omega, apply_scheme(params, scheme))
    return SpectrumPoint(omega=omega, s_ff=value)


def scan_spectrum(params: ReducedParams, scheme: Scheme,
                  omega_grid) -> list[SpectrumPoint]:
    """Evaluate :func:`spectrum` over a grid, recording per-point errors.

    Pole and near-threshold failures become NaN samples with the message
    in ``error`` instead of aborting the scan.  An empty or non-finite
    grid is rejected outright.
    """
    grid = np.asarray(omega_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidParameterError("omega_grid must be a non-empty 1-d array")
    if not np.all(np.isfinite(grid)):
        raise InvalidParameterError("omega_grid must be finite")
    applied = apply_scheme(params, scheme)
    out: list[SpectrumPoint] = []
    for w in grid:
        try:
            out.append(SpectrumPoint(omega=float(w),
                                     s_ff=_raw_spectrum(float(w), applied)))
        except (SingularityError, NearThresholdError) as exc:
            out.append(SpectrumPoint(omega=float(w), s_ff=math.nan,
                                     error=str(exc)))
    return out


def rates(params: ReducedParams, scheme: Scheme = Scheme.ESIS,
          normalized: bool = False) -> RateSet:
    """Cooling / heating rate pair: spectrum at +omega_m and -omega_m.

    ``normalized = True`` divides by 4 g^2 / kappa, which removes the
    trivial coupling scale; that needs g > 0 and kappa > 0.
    """
    applied = apply_scheme(params, scheme)
    minus = _raw_spectrum(applied.omega_m, applied)
    plus = _raw_spectrum(-applied.omega_m, applied)
    if not normalized:
        return RateSet(gamma_minus=minus, gamma_plus=plus, normalized=False)
    if applied.g_coupling == 0.0 or applied.kappa == 0.0:
        raise InvalidParameterError(
            "normalized rates are undefined at g_coupling = 0 or kappa = 0")
    scale = 4.0 * applied.g_coupling ** 2 / applied.kappa
    return RateSet(gamma_minus=minus / scale, gamma_plus=plus / scale,
                   normalized=True)


def solve_suppression(params: ReducedParams) -> SuppressionSolution:
    """Input-squeezing settings that null the heating rate exactly.

    Solves the interference condition at omega = -omega_m for (r_s,
    phi_s) given the detuning, linewidth, and intracavity drive in
    ``params`` (whose own bath field is ignored).  The solution exists
    iff the required tanh(r_s) has modulus < 1; otherwise the returned
    record is marked infeasible rather than raising, so searches can
    treat infeasibility as data.

    phi_s is canonicalized to [0, pi).
    """
    wm = params.omega_m
    c_pos = chi(wm, params)
    c_neg = chi(-wm, params)
    eps = params.eps
    den = c_pos * (1.0 + 2.0j * eps.conjugate() * c_neg.conjugate())
    if den == 0.0:
        raise DegenerateParameterError(
            "suppression condition degenerate: zero denominator")
    z = -c_neg.conjugate() * (1.0 - 2.0j * eps * c_pos) / den
    zmod = abs(z)
    if zmod >= 1.0 or not math.isfinite(zmod):
        return SuppressionSolution(r_s=math.nan, phi_s=math.nan,
                                   feasible=False, rhs_modulus=zmod)
    return SuppressionSolution(r_s=math.atanh(zmod),
                               phi_s=(-cmath.phase(z) / 2.0) % math.pi,
                               feasible=True, rhs_modulus=zmod)


def stokes_zero_eps(params: ReducedParams) -> complex:
    """Intracavity drive that nulls the heating rate with vacuum input.

    Root of 1 - 2i eps chi(omega_m) = 0, i.e. eps = 1 / (2i chi), which
    is (delta - omega_m)/2 - i kappa/4.  Unique, and independent of the
    coupling and of any input squeezing.
    """
    return 1.0 / (2.0j * chi(params.omega_m, params))
