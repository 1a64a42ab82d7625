"""Parameter records, scheme tags, and squeezed-bath bookkeeping.

Conventions used everywhere in this package:

* frequencies and rates are quoted in units of the mechanical frequency
  (so ``omega_m = 1.0`` unless a caller says otherwise);
* time dependence is exp(-i omega t), phases are radians;
* the pump-induced squeezing strength is stored as magnitude plus phase,
  ``eps = eps_mag * exp(i * eps_phase)``;
* a red-detuned cavity means ``delta > 0``.

Records are frozen dataclasses: validated at construction, safe to hash
into provenance, and cheap to copy with :func:`dataclasses.replace`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace

from scipy import constants

from .errors import InvalidParameterError

__all__ = [
    "Scheme",
    "SqueezedBath",
    "ReducedParams",
    "RateSet",
    "make_bath",
    "apply_scheme",
    "thermal_occupancy",
]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameterError(message)


def _finite(name: str, value: float) -> float:
    value = float(value)
    _require(math.isfinite(value), f"{name} must be finite, got {value!r}")
    return value


class Scheme(enum.Enum):
    """Which squeezing resources a run is allowed to use.

    SB
        plain sideband cooling, no squeezing anywhere.
    ES
        squeezed vacuum injected at the cavity input only.
    IS
        intracavity parametric squeezing only, vacuum input.
    ESIS
        both resources active and jointly tuned.
    """

    SB = "SB"
    ES = "ES"
    IS = "IS"
    ESIS = "ESIS"


@dataclass(frozen=True)
class SqueezedBath:
    """Squeezed-vacuum environment seen by the cavity input.

    Parameters
    ----------
    r_s:
        Squeezing amplitude, >= 0.  Zero means ordinary vacuum.
    phi_s:
        Squeezing phase in radians.  It only enters through
        exp(-2 i phi_s), so it is canonicalized into [0, pi) at
        construction.

    Derived moments: ``n_s = sinh(r_s)**2`` is the effective photon
    number and ``m_s = cosh(r_s) * sinh(r_s)`` the two-photon
    correlation, which satisfy m_s = sqrt(n_s * (n_s + 1)).
    """

    r_s: float = 0.0
    phi_s: float = 0.0

    def __post_init__(self) -> None:
        r_s = _finite("r_s", self.r_s)
        phi_s = _finite("phi_s", self.phi_s)
        _require(r_s >= 0.0, f"r_s must be >= 0, got {r_s}")
        object.__setattr__(self, "r_s", r_s)
        object.__setattr__(self, "phi_s", phi_s % math.pi)

    @property
    def n_s(self) -> float:
        return math.sinh(self.r_s) ** 2

    @property
    def m_s(self) -> float:
        return math.cosh(self.r_s) * math.sinh(self.r_s)


#: Plain vacuum input, shared default.
VACUUM_BATH = SqueezedBath()


def make_bath(r_s: float, phi_s: float = 0.0) -> SqueezedBath:
    """Validated :class:`SqueezedBath` constructor.

    Equivalent to calling the dataclass directly; exists so call sites
    read as what they build.
    """
    return SqueezedBath(r_s=r_s, phi_s=phi_s)


@dataclass(frozen=True)
class ReducedParams:
    """Effective single-cavity optomechanical model.

    The record mirrors the linearized pair

        da/dt = -(i delta + kappa/2) a - 2i eps a+ - i g (b + b+) + input
        db/dt = -(i omega_m + gamma/2) b - i g (a + a+) + input

    in the frame where the light-mechanics coupling ``g_coupling`` is
    real and positive.

    Parameters
    ----------
    delta:
        Cavity detuning.  Positive is red-detuned.
    kappa:
        Cavity linewidth, >= 0.
    gamma:
        Mechanical linewidth, > 0.
    g_coupling:
        Field-enhanced coupling, >= 0.
    omega_m:
        Mechanical frequency, > 0.  Defaults to 1 (unit system).
    eps_mag, eps_phase:
        Magnitude (>= 0) and phase of the intracavity squeezing drive.
    bath:
        Input squeezed vacuum; plain vacuum by default.
    n_th:
        Thermal phonon occupancy of the mechanical bath, >= 0.
    """

    delta: float
    kappa: float
    gamma: float
    g_coupling: float
    omega_m: float = 1.0
    eps_mag: float = 0.0
    eps_phase: float = 0.0
    bath: SqueezedBath = field(default_factory=SqueezedBath)
    n_th: float = 0.0

    def __post_init__(self) -> None:
        for name in ("delta", "kappa", "gamma", "g_coupling", "omega_m",
                     "eps_mag", "eps_phase", "n_th"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        _require(self.omega_m > 0.0, f"omega_m must be > 0, got {self.omega_m}")
        _require(self.kappa >= 0.0, f"kappa must be >= 0, got {self.kappa}")
        _require(self.gamma > 0.0, f"gamma must be > 0, got {self.gamma}")
        _require(self.g_coupling >= 0.0,
                 f"g_coupling must be >= 0, got {self.g_coupling}")
        _require(self.eps_mag >= 0.0, f"eps_mag must be >= 0, got {self.eps_mag}")
        _require(self.n_th >= 0.0, f"n_th must be >= 0, got {self.n_th}")
        _require(isinstance(self.bath, SqueezedBath),
                 "bath must be a SqueezedBath")

    @property
    def eps(self) -> complex:
        """Complex squeezing drive eps_mag * exp(i eps_phase)."""
        return self.eps_mag * cmath.exp(1j * self.eps_phase)

    @property
    def q_m(self) -> float:
        """Mechanical quality factor omega_m / gamma."""
        return self.omega_m / self.gamma


@dataclass(frozen=True)
class RateSet:
    """Anti-Stokes / Stokes rate pair at +-omega_m.

    ``gamma_minus`` cools, ``gamma_plus`` heats; the net optical rate is
    the property ``gamma_opt``.  ``normalized`` records whether the pair
    was divided by 4 g^2 / kappa.
    """

    gamma_minus: float
    gamma_plus: float
    normalized: bool = False

    @property
    def gamma_opt(self) -> float:
        return self.gamma_minus - self.gamma_plus


def apply_scheme(params: ReducedParams, scheme: Scheme) -> ReducedParams:
    """Zero out the resources a scheme is not allowed to use.

    Returns a new record; idempotent.  SB drops both resources, ES keeps
    only the input bath, IS keeps only the intracavity drive, ESIS keeps
    everything.
    """
    if scheme is Scheme.SB:
        return replace(params, eps_mag=0.0, eps_phase=0.0, bath=VACUUM_BATH)
    if scheme is Scheme.ES:
        return replace(params, eps_mag=0.0, eps_phase=0.0)
    if scheme is Scheme.IS:
        return replace(params, bath=VACUUM_BATH)
    if scheme is Scheme.ESIS:
        return params
    raise InvalidParameterError(f"unknown scheme {scheme!r}")


def thermal_occupancy(temperature: float, omega_m_abs: float) -> float:
    """Bose occupancy of a mode at ``omega_m_abs`` rad/s and T kelvin.

    Uses expm1 so the high-temperature limit (hbar omega / k_B T -> 0)
    stays accurate; T = 0 returns exactly 0.
    """
    temperature = _finite("temperature", temperature)
    omega_m_abs = _finite("omega_m_abs", omega_m_abs)
    _require(temperature >= 0.0, f"temperature must be >= 0, got {temperature}")
    _require(omega_m_abs > 0.0, f"omega_m_abs must be > 0, got {omega_m_abs}")
    if temperature == 0.0:
        return 0.0
    x = constants.hbar * omega_m_abs / (constants.k * temperature)
    return 1.0 / math.expm1(x)
