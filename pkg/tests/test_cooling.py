"""Cooling limits, the thermal floor, and the resource optimizers."""

import math
from dataclasses import replace

import numpy as np
import pytest

from sqzcool import (
    CoolingLimit,
    EmptyFeasibleSetError,
    HeatingDivergenceError,
    InfeasibleSuppressionError,
    InvalidParameterError,
    LimitMethod,
    ReducedParams,
    Scheme,
    SearchSpec,
    apply_scheme,
    exact_limit,
    make_bath,
    maximize_rate,
    min_phonon_floor,
    minimize_phonons,
    rate_equation_limit,
    rates,
    solve_suppression,
    steady_state,
)

REF = ReducedParams(delta=math.hypot(1.0, 200.0), kappa=400.0, gamma=1e-5,
                    g_coupling=1.0, n_th=1000.0)


def test_rate_equation_matches_direct_assembly():
    rng = np.random.default_rng(10)
    for _ in range(30):
        p = ReducedParams(delta=rng.uniform(0.5, 2.0),
                          kappa=rng.uniform(0.05, 0.5),
                          gamma=10.0 ** rng.uniform(-6, -4),
                          g_coupling=1e-3, n_th=rng.uniform(1.0, 500.0),
                          bath=make_bath(rng.uniform(0.0, 1.0)))
        scheme = Scheme.ES
        limit = rate_equation_limit(p, scheme)
        rr = rates(p, scheme)
        want = (p.gamma * p.n_th + rr.gamma_plus) / (p.gamma + rr.gamma_opt)
        assert limit.n_f == pytest.approx(want, rel=1e-12)
        assert limit.method is LimitMethod.RATE_EQUATION
        assert limit.rates == rr


def test_rate_equation_frozen_weak_coupling():
    p = ReducedParams(delta=1.0, kappa=0.04, gamma=1e-5, g_coupling=1e-3,
                      n_th=100.0)
    assert rate_equation_limit(p, Scheme.SB).n_f == pytest.approx(
        9.091826437941473, rel=1e-9)
    # exact Lyapunov answer at this weak-coupling point is within 1%
    assert exact_limit(p, Scheme.SB).n_f == pytest.approx(
        9.11454873686801, rel=1e-9)


def test_rate_equation_divergence():
    p = ReducedParams(delta=-math.hypot(1.0, 200.0), kappa=400.0, gamma=1e-9,
                      g_coupling=1.0, n_th=1000.0)
    with pytest.raises(HeatingDivergenceError):
        rate_equation_limit(p, Scheme.SB)


def test_exact_limit_wiring():
    p = replace(REF, g_coupling=0.5, eps_mag=50.0, eps_phase=0.3,
                bath=make_bath(0.5, 0.1))
    limit = exact_limit(p, Scheme.IS)
    applied = apply_scheme(p, Scheme.IS)
    assert limit.n_f == steady_state(applied).n_b
    assert limit.method is LimitMethod.LYAPUNOV
    assert limit.rates == rates(applied, Scheme.IS)
    assert isinstance(limit, CoolingLimit)


def test_min_phonon_floor():
    floor = min_phonon_floor(1e5, 1e3)
    assert abs(floor - 0.12) <= math.ulp(0.12)
    assert min_phonon_floor(1e6, 0.0) == 0.0
    with pytest.raises(InvalidParameterError):
        min_phonon_floor(0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        min_phonon_floor(math.inf, 1.0)
    with pytest.raises(InvalidParameterError):
        min_phonon_floor(1e5, -1.0)


def test_search_spec_validation():
    SearchSpec()
    for kwargs in (
        dict(g_min=1.0, g_max=0.5),
        dict(g_min=0.0),
        dict(eps_bound_frac=1.0),
        dict(eps_bound_frac=0.0),
        dict(eps_pin=-1.0),
        dict(n_starts=0),
        dict(max_evals_per_start=5),
        dict(xatol=0.0),
        dict(r_s_max=0.0),
        dict(g_ref=0.0),
    ):
        with pytest.raises(InvalidParameterError):
            SearchSpec(**kwargs)


def test_maximize_rate_sb_reference():
    res = maximize_rate(REF, Scheme.SB)
    assert res.gamma_opt_normalized == pytest.approx(0.004999937501171614,
                                                     rel=1e-9)
    assert res.g_opt == SearchSpec().g_ref
    assert res.eps_opt == 0.0 and res.r_s_opt == 0.0
    assert res.evaluations == 2 and res.converged
    assert res.scheme is Scheme.SB


def test_maximize_rate_es_equals_sb():
    # the net normalized rate is bath-independent, so the ES optimum
    # coincides with the plain-cavity rate exactly
    sb = maximize_rate(REF, Scheme.SB)
    es = maximize_rate(REF, Scheme.ES)
    assert es.gamma_opt_normalized == pytest.approx(sb.gamma_opt_normalized,
                                                    rel=1e-9)
    assert es.r_s_opt == pytest.approx(2.9957353985247206, rel=1e-10)


def test_maximize_rate_is_pinned_at_stokes_zero():
    res = maximize_rate(REF, Scheme.IS)
    assert res.eps_opt == pytest.approx(141.06912755811535, rel=1e-10)
    assert res.gamma_opt_normalized == pytest.approx(0.5024999687505914,
                                                     rel=1e-9)
    assert res.gamma_plus_normalized <= 1e-10 * res.gamma_minus_normalized


def test_maximize_rate_is_g_independent():
    a = maximize_rate(REF, Scheme.IS, SearchSpec(g_ref=1e-3))
    b = maximize_rate(REF, Scheme.IS, SearchSpec(g_ref=2e-3))
    assert a.gamma_opt_normalized == pytest.approx(b.gamma_opt_normalized,
                                                   rel=1e-9)
    assert b.gamma_tot == pytest.approx(4.0 * a.gamma_tot, rel=1e-9)
    assert a.g_opt == 1e-3 and b.g_opt == 2e-3


def test_minimize_phonons_is_frozen_and_deterministic():
    first = minimize_phonons(REF, Scheme.IS)
    second = minimize_phonons(REF, Scheme.IS)
    assert first == second
    assert first.n_f_min == pytest.approx(0.12083704157660269, rel=1e-6)
    assert first.g_opt == pytest.approx(5.317218107751122, rel=1e-3)
    assert first.n_f_rate_equation == pytest.approx(0.07038246013137339,
                                                    rel=1e-6)
    assert first.gamma_tot == pytest.approx(14.207085340203163, rel=1e-3)
    assert first.converged
    floor = min_phonon_floor(REF.q_m, REF.n_th)
    assert first.n_f_min >= floor


def test_minimize_phonons_es_suppressed_manifold():
    res = minimize_phonons(REF, Scheme.ES)
    assert res.r_s_opt == pytest.approx(2.9957353985247206, rel=1e-10)
    assert res.phi_s_opt == pytest.approx(math.pi / 4.0, rel=1e-9)
    assert res.eps_opt == 0.0
    assert min_phonon_floor(REF.q_m, REF.n_th) <= res.n_f_min < REF.n_th


def test_minimize_phonons_respects_eps_pin():
    spec = SearchSpec(eps_pin=141.4, n_starts=4, max_evals_per_start=300)
    res = minimize_phonons(REF, Scheme.ESIS, spec)
    assert res.eps_opt == 141.4
    pin_params = replace(REF, eps_mag=res.eps_opt, eps_phase=res.phi_eps_opt)
    sol = solve_suppression(pin_params)
    assert sol.feasible
    assert res.r_s_opt == pytest.approx(sol.r_s, rel=1e-9)
    assert res.n_f_min >= min_phonon_floor(REF.q_m, REF.n_th)


def test_empty_feasible_set_and_infeasible_pin():
    spec = SearchSpec(n_starts=1, max_evals_per_start=10)
    # an |eps| pin far above the parametric threshold leaves no stable
    # trial point anywhere
    with pytest.raises(EmptyFeasibleSetError):
        minimize_phonons(REF, Scheme.ESIS, replace(spec, eps_pin=300.0))
    blue = replace(REF, delta=-REF.delta)
    # blue detuning pushes the pinned Stokes-zero drive above threshold
    with pytest.raises(EmptyFeasibleSetError):
        minimize_phonons(blue, Scheme.IS, spec)
    # and the undriven suppression condition has no solution at all
    with pytest.raises(InfeasibleSuppressionError):
        minimize_phonons(blue, Scheme.ES, spec)


def test_unnormalized_rates_scale_as_g_squared():
    rng = np.random.default_rng(12)
    for _ in range(20):
        g = rng.uniform(0.01, 1.0)
        p = replace(REF, g_coupling=g, eps_mag=rng.uniform(0, 100),
                    bath=make_bath(rng.uniform(0, 1)))
        small = rates(p)
        big = rates(replace(p, g_coupling=2.0 * g))
        assert big.gamma_minus == pytest.approx(4.0 * small.gamma_minus,
                                                rel=1e-12)
        assert big.gamma_plus == pytest.approx(4.0 * small.gamma_plus,
                                               rel=1e-12)
