"""Cooling limits and scheme-wise optimization of the phonon number.

Two figures of merit, exposed separately because their optima differ:

* :func:`maximize_rate` pushes the normalized net optical rate, which
  is independent of the coupling g (so g is held at a small reference
  value and only the squeezing resources are searched);
* :func:`minimize_phonons` pushes the exact steady-state occupancy,
  which balances cooling power against squeezing-added backaction and
  does depend on g.

Both share one search engine: coarse multi-start grids (logarithmic in
g and |eps|, uniform in phases), Nelder-Mead refinement from the best
starts, and a deterministic tie-break that prefers smaller g and then
smaller |eps| among equally good optima.  The tie-break is load-bearing:
parts of the landscape are exactly flat along a pump-phase ridge where
only the optimal coupling varies.

By default the search runs on the suppressed manifold: the heating rate
is nulled analytically at every trial point (input squeezing solved per
trial for ES/ESIS, the intracavity drive pinned at its Stokes-zero for
IS), which removes the fine-tuned interference directions from the
numerical search.  ``pin_suppression = False`` searches the raw space.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize as _sciopt

from .errors import (
    EmptyFeasibleSetError,
    HeatingDivergenceError,
    InfeasibleSuppressionError,
    InvalidParameterError,
    NearThresholdError,
    NumericalError,
    SingularityError,
    UnstableSystemError,
)
from .gaussian import stability, steady_state
from .model import RateSet, ReducedParams, Scheme, SqueezedBath, apply_scheme
from .response import parametric_threshold, rates, solve_suppression, stokes_zero_eps

__all__ = [
    "LimitMethod",
    "CoolingLimit",
    "SearchSpec",
    "OptimizationResult",
    "rate_equation_limit",
    "exact_limit",
    "min_phonon_floor",
    "minimize_phonons",
    "maximize_rate",
]

#: Relative window within which refined optima count as tied.
TIE_REL = 1e-7


class LimitMethod(enum.Enum):
    RATE_EQUATION = "rate_equation"
    LYAPUNOV = "lyapunov"


@dataclass(frozen=True)
class CoolingLimit:
    """Final phonon number plus the rates it was computed from."""

    n_f: float
    method: LimitMethod
    rates: RateSet


@dataclass(frozen=True)
class SearchSpec:
    """Knobs of the optimization search space.

    ``eps_bound_frac`` caps |eps| at that fraction of the parametric
    threshold sqrt(delta^2 + kappa^2/4)/2.  ``eps_pin`` freezes |eps|
    (phase stays free) for IS/ESIS and bypasses the cap; it is ignored
    for schemes that force eps = 0.  ``g_ref`` is the coupling used by
    the rate objective, which is g-independent.  Phases are searched
    over [0, 2 pi) for the pump and [0, pi) for the input squeezing.
    """

    g_min: float = 1e-3
    g_max: float = 1e2
    eps_bound_frac: float = 0.9999
    eps_pin: float | None = None
    pin_suppression: bool = True
    n_starts: int = 20
    max_evals_per_start: int = 2000
    xatol: float = 1e-6
    r_s_max: float = 10.0
    g_ref: float = 1e-3
    seed: int = 0

    def __post_init__(self) -> None:
        def bad(msg: str) -> None:
            raise InvalidParameterError(f"SearchSpec: {msg}")

        if not (0.0 < self.g_min < self.g_max):
            bad(f"need 0 < g_min < g_max, got ({self.g_min}, {self.g_max})")
        if not (0.0 < self.eps_bound_frac < 1.0):
            bad(f"eps_bound_frac must be in (0, 1), got {self.eps_bound_frac}")
        if self.eps_pin is not None and not (self.eps_pin >= 0.0):
            bad(f"eps_pin must be >= 0, got {self.eps_pin}")
        if self.n_starts < 1:
            bad(f"n_starts must be >= 1, got {self.n_starts}")
        if self.max_evals_per_start < 10:
            bad(f"max_evals_per_start must be >= 10, got "
                f"{self.max_evals_per_start}")
        if not (self.xatol > 0.0):
            bad(f"xatol must be > 0, got {self.xatol}")
        if not (self.r_s_max > 0.0):
            bad(f"r_s_max must be > 0, got {self.r_s_max}")
        if not (self.g_ref > 0.0):
            bad(f"g_ref must be > 0, got {self.g_ref}")


@dataclass(frozen=True)
class OptimizationResult:
    """Winning point of a search, fully re-evaluated.

    ``n_f_min`` is the exact (Lyapunov) occupancy at the optimum and
    ``n_f_rate_equation`` the rate-equation companion; for the rate
    objective both are evaluated at the reference coupling and
    ``g_opt`` reports that reference.  ``gamma_tot`` is the normalized
    net rate times g_opt^2.  ``evaluations`` counts objective calls;
    ``converged`` reports the winning simplex's diameter test.
    """

    scheme: Scheme
    n_f_min: float
    n_f_rate_equation: float
    g_opt: float
    eps_opt: float
    phi_eps_opt: float
    r_s_opt: float
    phi_s_opt: float
    gamma_minus_normalized: float
    gamma_plus_normalized: float
    gamma_opt_normalized: float
    gamma_tot: float
    evaluations: int
    converged: bool


def rate_equation_limit(params: ReducedParams,
                        scheme: Scheme = Scheme.ESIS) -> CoolingLimit:
    """Weak-coupling phonon balance (gamma n_th + G+) / (gamma + G- - G+).

    Valid when the optical rates are slow against the cavity response;
    the exact :func:`exact_limit` is the gate, this is the estimate.
    """
    rr = rates(params, scheme, normalized=False)
    denom = params.gamma + rr.gamma_opt
    if denom <= 0.0:
        raise HeatingDivergenceError(
            f"phonon balance diverges: gamma + gamma_opt = {denom:.6g} <= 0")
    n_f = (params.gamma * params.n_th + rr.gamma_plus) / denom
    return CoolingLimit(n_f=n_f, method=LimitMethod.RATE_EQUATION, rates=rr)


def exact_limit(params: ReducedParams,
                scheme: Scheme = Scheme.ESIS) -> CoolingLimit:
    """Exact steady-state occupancy from the Lyapunov covariance."""
    applied = apply_scheme(params, scheme)
    state = steady_state(applied)
    return CoolingLimit(n_f=state.n_b, method=LimitMethod.LYAPUNOV,
                        rates=rates(applied, scheme, normalized=False))


def min_phonon_floor(q_m: float, n_th: float) -> float:
    """Thermal floor 2 n_th / Q_m + sqrt(n_th / Q_m) of any cold cavity.

    Lower bound on the steady occupancy once the optical cooling is
    arbitrarily strong and backaction-free; no optimizer result can
    beat it.
    """
    if not (q_m > 0.0) or not math.isfinite(q_m):
        raise InvalidParameterError(f"q_m must be > 0 and finite, got {q_m}")
    if not (n_th >= 0.0) or not math.isfinite(n_th):
        raise InvalidParameterError(f"n_th must be >= 0 and finite, got {n_th}")
    ratio = n_th / q_m
    return 2.0 * ratio + math.sqrt(ratio)


# ---------------------------------------------------------------------------
# search engine

_PHONONS = "phonons"
_RATE = "rate"

# coarse grid values in scaled [0, 1] coordinates, per variable kind
_COARSE = {
    "log_g": np.linspace(0.0, 1.0, 6),
    "eps_frac": np.array([0.0, 1e-3, 3.16e-3, 1e-2, 3.16e-2,
                          0.1, 0.316, 0.9, 0.99, 0.999, 1.0]),
    "phi_eps": np.arange(8) / 8.0,
    "r_s": np.array([0.0, 0.01, 0.03, 0.1, 0.3]),
    "phi_s": np.arange(4) / 4.0,
}
_COARSE_CAP = 4000
_JITTER = 0.02


class _Problem:
    """Bound objective: scaled [0,1]^d coordinates -> penalized value."""

    def __init__(self, base: ReducedParams, scheme: Scheme,
                 spec: SearchSpec, objective: str):
        if base.kappa <= 0.0:
            raise InvalidParameterError(
                "optimization requires kappa > 0")
        self.base = base
        self.scheme = scheme
        self.spec = spec
        self.objective = objective
        self.evaluations = 0

        eps_free = scheme in (Scheme.IS, Scheme.ESIS)
        bath_free = scheme in (Scheme.ES, Scheme.ESIS)
        self.eps_max = spec.eps_bound_frac * parametric_threshold(base)

        # IS on the suppressed manifold sits at its unique Stokes-zero
        # drive unless the caller pinned |eps| explicitly.
        self.stokes_pin: complex | None = None
        if (scheme is Scheme.IS and spec.pin_suppression
                and spec.eps_pin is None):
            self.stokes_pin = stokes_zero_eps(base)

        # ES/ESIS on the suppressed manifold solve the input squeezing
        # per trial point; for ES the drive is fixed so solve it once.
        self.pinned_bath: SqueezedBath | None = None
        self.solve_bath = False
        if spec.pin_suppression and bath_free:
            if scheme is Scheme.ES:
                sol = solve_suppression(apply_scheme(base, Scheme.ES))
                self.pinned_bath = sol.bath()  # raises if infeasible
            else:
                self.solve_bath = True

        names: list[str] = []
        if objective == _PHONONS:
            names.append("log_g")
        if eps_free and self.stokes_pin is None:
            if spec.eps_pin is None:
                names.append("eps_frac")
            names.append("phi_eps")
        if bath_free and not spec.pin_suppression:
            names.append("r_s")
            names.append("phi_s")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.dim = len(names)
        self.lg_lo = math.log10(spec.g_min)
        self.lg_hi = math.log10(spec.g_max)

    def decode(self, x) -> ReducedParams:
        """Scaled coordinates -> full parameter record (may raise
        InfeasibleSuppressionError when the trial pin has no solution)."""
        spec = self.spec
        idx = self.index
        if self.objective == _PHONONS:
            g = 10.0 ** (self.lg_lo
                         + x[idx["log_g"]] * (self.lg_hi - self.lg_lo))
        else:
            g = spec.g_ref

        if self.stokes_pin is not None:
            eps_mag = abs(self.stokes_pin)
            eps_phase = math.atan2(self.stokes_pin.imag, self.stokes_pin.real)
        elif "phi_eps" in idx:
            eps_phase = (2.0 * math.pi) * x[idx["phi_eps"]]
            if spec.eps_pin is not None:
                eps_mag = spec.eps_pin
            else:
                eps_mag = self.eps_max * x[idx["eps_frac"]]
        else:
            eps_mag, eps_phase = 0.0, 0.0

        if "r_s" in idx:
            bath = SqueezedBath(r_s=spec.r_s_max * x[idx["r_s"]],
                                phi_s=math.pi * x[idx["phi_s"]])
        else:
            bath = self.base.bath

        params = apply_scheme(
            replace(self.base, g_coupling=g, eps_mag=eps_mag,
                    eps_phase=eps_phase, bath=bath),
            self.scheme)
        if self.pinned_bath is not None:
            params = replace(params, bath=self.pinned_bath)
        elif self.solve_bath:
            params = replace(params, bath=solve_suppression(params).bath())
        return params

    def __call__(self, x) -> float:
        self.evaluations += 1
        try:
            params = self.decode(x)
        except InfeasibleSuppressionError:
            return math.inf
        try:
            if self.objective == _PHONONS:
                return steady_state(params).n_b
            stable, _ = stability(params)
            if not stable:
                return math.inf
            return -rates(params, self.scheme, normalized=True).gamma_opt
        except (UnstableSystemError, NumericalError, NearThresholdError,
                SingularityError):
            return math.inf


def _coarse_points(problem: _Problem, rng: np.random.Generator) -> np.ndarray:
    grids = [_COARSE[name] for name in problem.names]
    total = int(np.prod([len(g) for g in grids]))
    if total <= _COARSE_CAP:
        mesh = np.meshgrid(*grids, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)
    cols = [rng.choice(g, size=_COARSE_CAP) for g in grids]
    return np.stack(cols, axis=-1)


def _refine(problem: _Problem, x0: np.ndarray) -> tuple[float, np.ndarray, bool]:
    spec = problem.spec
    f0 = problem(x0)
    if not math.isfinite(f0):
        return math.inf, x0, False
    res = _sciopt.minimize(
        problem, x0, method="Nelder-Mead",
        bounds=[(0.0, 1.0)] * problem.dim,
        options={"maxfev": spec.max_evals_per_start,
                 "xatol": spec.xatol,
                 "fatol": 1e-11 * (1.0 + abs(f0)),
                 "disp": False})
    sim = res.final_simplex[0]
    diameter = float(np.max(np.abs(sim[1:] - sim[0])))
    value = float(res.fun)
    if value > f0:  # never trust a refinement that lost ground
        return f0, x0, False
    return value, np.asarray(res.x, dtype=float), diameter <= spec.xatol


def _search(base: ReducedParams, scheme: Scheme, spec: SearchSpec,
            objective: str) -> tuple[_Problem, float, np.ndarray, bool]:
    problem = _Problem(base, scheme, spec, objective)
    rng = np.random.default_rng(spec.seed)

    if problem.dim == 0:
        x = np.zeros(0)
        value = problem(x)
        if not math.isfinite(value):
            raise EmptyFeasibleSetError(
                f"the single {scheme.value} candidate point is infeasible")
        return problem, value, x, True

    points = _coarse_points(problem, rng)
    values = np.array([problem(p) for p in points])
    finite = np.isfinite(values)
    if not finite.any():
        raise EmptyFeasibleSetError(
            f"no stable feasible point on the {scheme.value} coarse grid")

    order = np.argsort(values, kind="stable")
    starts = order[np.isfinite(values[order])][:spec.n_starts]

    candidates: list[tuple[float, np.ndarray, bool]] = []
    for k in starts:
        x0 = np.clip(points[k] + rng.uniform(-_JITTER, _JITTER, problem.dim),
                     0.0, 1.0)
        candidates.append(_refine(problem, x0))

    best_val = min(c[0] for c in candidates)
    if not math.isfinite(best_val):
        raise EmptyFeasibleSetError(
            f"every {scheme.value} refinement start was infeasible")
    window = TIE_REL * max(1.0, abs(best_val))
    ties = [c for c in candidates if c[0] <= best_val + window]

    def key(cand: tuple[float, np.ndarray, bool]):
        params = problem.decode(cand[1])
        return (params.g_coupling, params.eps_mag, cand[0])

    value, x, converged = min(ties, key=key)
    return problem, value, x, converged


def _finish(problem: _Problem, x: np.ndarray,
            converged: bool) -> OptimizationResult:
    params = problem.decode(x)
    value = problem(x)  # fresh evaluation at the reported point
    rr = rates(params, problem.scheme, normalized=True)
    if problem.objective == _PHONONS:
        n_f = value
    else:
        n_f = steady_state(params).n_b
    try:
        n_f_re = rate_equation_limit(params, problem.scheme).n_f
    except HeatingDivergenceError:
        n_f_re = math.nan
    return OptimizationResult(
        scheme=problem.scheme,
        n_f_min=n_f,
        n_f_rate_equation=n_f_re,
        g_opt=params.g_coupling,
        eps_opt=params.eps_mag,
        phi_eps_opt=params.eps_phase,
        r_s_opt=params.bath.r_s,
        phi_s_opt=params.bath.phi_s,
        gamma_minus_normalized=rr.gamma_minus,
        gamma_plus_normalized=rr.gamma_plus,
        gamma_opt_normalized=rr.gamma_opt,
        gamma_tot=rr.gamma_opt * params.g_coupling ** 2,
        evaluations=problem.evaluations,
        converged=converged)


def minimize_phonons(base: ReducedParams, scheme: Scheme,
                     spec: SearchSpec | None = None) -> OptimizationResult:
    """Search the scheme's resources and g for the lowest exact n_f.

    The objective is the Lyapunov occupancy; unstable or infeasible
    trial points are penalized, and a fully infeasible space raises
    EmptyFeasibleSetError (an infeasible ES pin raises
    InfeasibleSuppressionError up front).  Deterministic for a fixed
    SearchSpec.
    """
    spec = spec if spec is not None else SearchSpec()
    problem, _, x, converged = _search(base, scheme, spec, _PHONONS)
    return _finish(problem, x, converged)


def maximize_rate(base: ReducedParams, scheme: Scheme,
                  spec: SearchSpec | None = None) -> OptimizationResult:
    """Search the scheme's squeezing resources for the largest
    normalized net rate.

    The normalized rate does not depend on g, so g is held at
    ``spec.g_ref`` (stability is still enforced there) and the result's
    g and n_f fields refer to that reference coupling.
    """
    spec = spec if spec is not None else SearchSpec()
    problem, _, x, converged = _search(base, scheme, spec, _RATE)
    return _finish(problem, x, converged)
