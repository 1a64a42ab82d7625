"""Three-mode model: signal cavity, pump cavity, mechanics.

The pump mode feeds the signal mode's parametric drive; eliminating it
adiabatically collapses the system onto the reduced single-cavity model
in :mod:`sqzcool.model`.  This module owns that bridge:

* :func:`classical_steady_state` solves the coupled classical fixed
  point (cubic in the fields, so it probes for multiple roots);
* :func:`extract_reduced` maps the fixed point onto a
  :class:`ReducedParams` record in the frame where the light-mechanics
  coupling is real;
* :func:`adiabatic_report` quantifies when that collapse is legitimate
  and what residual shifts the eliminated pump leaves behind.

The classical equations, with j in {s, p} and drives E_j:

    0 = (-i delta_s - kappa_s/2) alpha_s - 2i conj(eps0) conj(alpha_s)
        alpha_p - i g_s alpha_s (beta + conj(beta)) - E_s
    0 = (-i delta_p - kappa_p/2) alpha_p - i eps0 alpha_s^2
        - i g_p alpha_p (beta + conj(beta)) - E_p
    0 = (-i omega_m - gamma/2) beta - i g_s |alpha_s|^2
        - i g_p |alpha_p|^2
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BistabilityWarning,
    ConvergenceError,
    DegenerateParameterError,
    InvalidParameterError,
)
from .model import ReducedParams, SqueezedBath

__all__ = [
    "FullModelParams",
    "ClassicalSteadyState",
    "AdiabaticReport",
    "classical_steady_state",
    "extract_reduced",
    "frame_rotation",
    "adiabatic_report",
]

#: Newton target on max|equation| / max|drive|.
_NEWTON_TOL = 1e-12
_MAX_NEWTON_ITERS = 10_000
_ROOT_MISMATCH = 1e-6


@dataclass(frozen=True)
class FullModelParams:
    """Laboratory-level parameters of the three-mode system.

    Subscripts s and p are the signal and pump cavity modes; eps0 is
    the bare two-photon conversion strength, drive_j the classical
    pump amplitudes.  One squeezed bath feeds the signal input (the
    pump input stays vacuum) and is copied verbatim into the reduced
    record.
    """

    omega_m: float
    gamma: float
    delta_s: float
    delta_p: float
    kappa_s: float
    kappa_p: float
    g_s: float
    g_p: float
    eps0: complex
    drive_s: complex
    drive_p: complex
    n_th: float = 0.0
    bath: SqueezedBath = field(default_factory=SqueezedBath)

    def __post_init__(self) -> None:
        def bad(msg: str) -> None:
            raise InvalidParameterError(f"FullModelParams: {msg}")

        for name in ("omega_m", "gamma", "delta_s", "delta_p", "kappa_s",
                     "kappa_p", "g_s", "g_p", "n_th"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                bad(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        for name in ("eps0", "drive_s", "drive_p"):
            value = complex(getattr(self, name))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                bad(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.omega_m <= 0.0:
            bad(f"omega_m must be > 0, got {self.omega_m}")
        if self.gamma <= 0.0:
            bad(f"gamma must be > 0, got {self.gamma}")
        if self.kappa_s <= 0.0 or self.kappa_p <= 0.0:
            bad("kappa_s and kappa_p must be > 0")
        if self.n_th < 0.0:
            bad(f"n_th must be >= 0, got {self.n_th}")
        if not isinstance(self.bath, SqueezedBath):
            bad("bath must be a SqueezedBath")


@dataclass(frozen=True)
class ClassicalSteadyState:
    """Classical fixed point and the effective detunings it induces.

    The mechanical displacement shifts both cavities:
    delta_j_eff = delta_j + g_j (beta + conj(beta)).  ``residual`` is
    max|equation| over max|drive| at the returned root.
    """

    alpha_s: complex
    alpha_p: complex
    beta: complex
    residual: float
    delta_s_eff: float
    delta_p_eff: float


@dataclass(frozen=True)
class AdiabaticReport:
    """Validity of eliminating the pump mode, plus leftover shifts.

    The pump is eliminable when its effective detuning dominates every
    coupling-induced bandwidth:

        margin = delta_p_eff / max(sqrt(g_p^2 |alpha_p|^2 kappa_p /
                 omega_m), sqrt(kappa_p / kappa_s) |2 eps0 alpha_s|)

    and ``valid`` means margin >= 10.  The elimination leaves
    second-order corrections on the signal mode and the mechanics:

    * ``detuning_shift_s``: signal detuning moves by
      -4 |eps0 alpha_s|^2 delta_p_eff / (delta_p_eff^2 + kappa_p^2/4);
    * ``dissipation_shift_s``: signal linewidth gains
      +4 |eps0 alpha_s|^2 kappa_p / (same denominator);
    * ``mech_detuning_shift``: the mechanical frequency moves by
      -2 g_p^2 |alpha_p|^2 delta_p_eff / (same denominator), and the
      eliminated pump also imprints a parametric mechanical squeezing
      term of exactly this magnitude (not carried by the reduced
      model; it bounds the reduction error on the mechanics).
    """

    margin: float
    valid: bool
    lhs: float
    rhs_terms: tuple[float, float]
    detuning_shift_s: float
    dissipation_shift_s: float
    mech_detuning_shift: float


def _equations(u: np.ndarray, p: FullModelParams) -> np.ndarray:
    a_s = complex(u[0], u[1])
    a_p = complex(u[2], u[3])
    beta = complex(u[4], u[5])
    disp = 2.0 * beta.real
    f_s = ((-1j * p.delta_s - 0.5 * p.kappa_s) * a_s
           - 2.0j * p.eps0.conjugate() * a_s.conjugate() * a_p
           - 1j * p.g_s * a_s * disp - p.drive_s)
    f_p = ((-1j * p.delta_p - 0.5 * p.kappa_p) * a_p
           - 1j * p.eps0 * a_s * a_s
           - 1j * p.g_p * a_p * disp - p.drive_p)
    f_b = ((-1j * p.omega_m - 0.5 * p.gamma) * beta
           - 1j * p.g_s * abs(a_s) ** 2 - 1j * p.g_p * abs(a_p) ** 2)
    return np.array([f_s.real, f_s.imag, f_p.real, f_p.imag,
                     f_b.real, f_b.imag])


def _linear_guess(p: FullModelParams) -> np.ndarray:
    a_s = -p.drive_s / complex(0.5 * p.kappa_s, p.delta_s)
    a_p = -p.drive_p / complex(0.5 * p.kappa_p, p.delta_p)
    return np.array([a_s.real, a_s.imag, a_p.real, a_p.imag, 0.0, 0.0])


def _pulled_guess(p: FullModelParams) -> np.ndarray:
    # drive over half linewidth: where a branch pulled onto resonance
    # by the mechanical displacement would sit
    a_s = -p.drive_s / (0.5 * p.kappa_s)
    a_p = -p.drive_p / (0.5 * p.kappa_p)
    force = p.g_s * abs(a_s) ** 2 + p.g_p * abs(a_p) ** 2
    beta = -1j * force / complex(0.5 * p.gamma, p.omega_m)
    return np.array([a_s.real, a_s.imag, a_p.real, a_p.imag,
                     beta.real, beta.imag])


def _newton(p: FullModelParams, u0: np.ndarray, scale: float) -> tuple[np.ndarray, float]:
    u = np.asarray(u0, dtype=float).copy()
    res = float(np.max(np.abs(_equations(u, p)))) / scale
    for _ in range(_MAX_NEWTON_ITERS):
        if res <= _NEWTON_TOL:
            return u, res
        f = _equations(u, p)
        jac = np.empty((6, 6))
        for j in range(6):
            h = 1e-7 * max(1.0, abs(u[j]))
            up, um = u.copy(), u.copy()
            up[j] += h
            um[j] -= h
            jac[:, j] = (_equations(up, p) - _equations(um, p)) / (2.0 * h)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(
                f"singular Jacobian in classical solve: {exc}",
                residual=res) from exc
        t = 1.0
        for _ in range(40):
            trial = u + t * step
            trial_res = float(np.max(np.abs(_equations(trial, p)))) / scale
            if trial_res < res:
                u, res = trial, trial_res
                break
            t *= 0.5
        else:
            raise ConvergenceError(
                f"classical solve stalled at residual {res:.3e}",
                residual=res)
    raise ConvergenceError(
        f"classical solve hit the iteration cap at residual {res:.3e}",
        residual=res)


def classical_steady_state(params: FullModelParams,
                           initial_guess=None) -> ClassicalSteadyState:
    """Damped-Newton solve of the classical fixed point.

    ``initial_guess`` is (alpha_s, alpha_p, beta); the default is the
    linear-cavity response with the mechanics at rest.  Under the
    default, a second start from the resonance-pulled amplitudes
    (drive over half linewidth) probes for a coexisting branch of the
    cubic system: a BistabilityWarning is issued when the two roots
    disagree by more than 1e-6 relative, and the linear-guess root is
    returned.  If the linear guess stalls the pulled guess serves as a
    fallback before giving up.

    Raises ConvergenceError (carrying the last residual) if Newton
    stalls or runs out of iterations.
    """
    scale = max(abs(params.drive_s), abs(params.drive_p), 1e-30)
    if initial_guess is not None:
        a_s, a_p, beta = (complex(z) for z in initial_guess)
        u0 = np.array([a_s.real, a_s.imag, a_p.real, a_p.imag,
                       beta.real, beta.imag])
        root, res = _newton(params, u0, scale)
    else:
        probe = None
        try:
            root, res = _newton(params, _linear_guess(params), scale)
        except ConvergenceError:
            root, res = _newton(params, _pulled_guess(params), scale)
        else:
            try:
                probe, _ = _newton(params, _pulled_guess(params), scale)
            except ConvergenceError:
                probe = None
        if probe is not None:
            gap = float(np.max(np.abs(probe - root))
                        / (1.0 + np.max(np.abs(root))))
            if gap > _ROOT_MISMATCH:
                warnings.warn(
                    f"classical equations admit another root "
                    f"(relative separation {gap:.3e}); returning the "
                    f"linear-guess branch", BistabilityWarning,
                    stacklevel=2)

    disp = 2.0 * float(root[4])
    return ClassicalSteadyState(
        alpha_s=complex(root[0], root[1]),
        alpha_p=complex(root[2], root[3]),
        beta=complex(root[4], root[5]),
        residual=float(res),
        delta_s_eff=float(params.delta_s + params.g_s * disp),
        delta_p_eff=float(params.delta_p + params.g_p * disp))


def frame_rotation(params: FullModelParams,
                   state: ClassicalSteadyState) -> float:
    """Phase rotating the signal mode so g_s alpha_s lands real positive.

    Zero when the product vanishes.  The reduced-model pump phase is
    quoted in this rotated frame; the angle is reported so lab-frame
    quantities can be reconstructed.
    """
    product = params.g_s * state.alpha_s
    if product == 0:
        return 0.0
    return cmath.phase(product)


def extract_reduced(params: FullModelParams,
                    state: ClassicalSteadyState) -> ReducedParams:
    """Collapse the solved three-mode system onto the reduced record.

    The effective single-cavity parameters are the displacement-shifted
    signal detuning, the bare signal linewidth, the coupling magnitude
    |g_s alpha_s|, and the pump-mediated squeezing drive
    conj(eps0) alpha_p re-expressed in the frame of
    :func:`frame_rotation`.  The squeezed bath and mechanical numbers
    carry over unchanged.
    """
    g_mag = abs(params.g_s * state.alpha_s)
    eps_eff = params.eps0.conjugate() * state.alpha_p
    eps_eff *= cmath.exp(-2.0j * frame_rotation(params, state))
    return ReducedParams(
        delta=state.delta_s_eff,
        kappa=params.kappa_s,
        gamma=params.gamma,
        g_coupling=g_mag,
        omega_m=params.omega_m,
        eps_mag=abs(eps_eff),
        eps_phase=cmath.phase(eps_eff) % (2.0 * math.pi),
        bath=params.bath,
        n_th=params.n_th)


def adiabatic_report(params: FullModelParams,
                     state: ClassicalSteadyState) -> AdiabaticReport:
    """Judge the pump elimination and quantify its leftover shifts."""
    dp = state.delta_p_eff
    lorentz = dp * dp + 0.25 * params.kappa_p ** 2
    if lorentz == 0.0:
        raise DegenerateParameterError(
            "pump response degenerate: delta_p_eff = 0 with kappa_p = 0")
    pump_drive_sq = abs(params.eps0) ** 2 * abs(state.alpha_s) ** 2
    mech_drive_sq = params.g_p ** 2 * abs(state.alpha_p) ** 2
    rhs = (math.sqrt(mech_drive_sq * params.kappa_p / params.omega_m),
           math.sqrt(params.kappa_p / params.kappa_s)
           * 2.0 * abs(params.eps0 * state.alpha_s))
    worst = max(rhs)
    margin = math.inf if worst == 0.0 else dp / worst
    return AdiabaticReport(
        margin=margin,
        valid=margin >= 10.0,
        lhs=dp,
        rhs_terms=rhs,
        detuning_shift_s=-4.0 * pump_drive_sq * dp / lorentz,
        dissipation_shift_s=4.0 * pump_drive_sq * params.kappa_p / lorentz,
        mech_detuning_shift=-2.0 * mech_drive_sq * dp / lorentz)
