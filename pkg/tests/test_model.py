"""Parameter records, scheme application, and bath bookkeeping."""

import math
from dataclasses import replace

import numpy as np
import pytest
from scipy import constants

from sqzcool import (
    InvalidParameterError,
    RateSet,
    ReducedParams,
    Scheme,
    SqueezedBath,
    apply_scheme,
    make_bath,
    thermal_occupancy,
)


def test_bath_moments_frozen():
    bath = make_bath(3.0)
    assert bath.n_s == pytest.approx(100.35781806122796, rel=1e-12)
    assert bath.m_s == pytest.approx(100.85657868513961, rel=1e-12)


def test_bath_moment_identity():
    rng = np.random.default_rng(1)
    for r in rng.uniform(0.0, 5.0, size=50):
        bath = make_bath(float(r))
        assert bath.m_s == pytest.approx(
            math.sqrt(bath.n_s * (bath.n_s + 1.0)), rel=1e-12)


def test_bath_phase_canonicalized():
    assert SqueezedBath(1.0, math.pi + 0.3).phi_s == pytest.approx(0.3)
    assert SqueezedBath(1.0, -0.2).phi_s == pytest.approx(math.pi - 0.2)
    assert SqueezedBath(1.0, 0.4).phi_s == 0.4


def test_bath_validation():
    with pytest.raises(InvalidParameterError):
        SqueezedBath(-0.1)
    with pytest.raises(InvalidParameterError):
        SqueezedBath(math.nan)
    vacuum = SqueezedBath()
    assert vacuum.r_s == 0.0 and vacuum.n_s == 0.0 and vacuum.m_s == 0.0


def test_reduced_params_validation():
    good = dict(delta=1.0, kappa=0.5, gamma=1e-4, g_coupling=0.1)
    ReducedParams(**good)
    for bad in (
        dict(good, omega_m=0.0),
        dict(good, gamma=0.0),
        dict(good, kappa=-1.0),
        dict(good, g_coupling=-0.1),
        dict(good, eps_mag=-1.0),
        dict(good, n_th=-1.0),
        dict(good, delta=math.nan),
        dict(good, bath="squeezed"),
    ):
        with pytest.raises(InvalidParameterError):
            ReducedParams(**bad)


def test_eps_and_q_m_properties():
    p = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-3, g_coupling=0.1,
                      omega_m=2.0, eps_mag=2.0, eps_phase=0.7)
    assert p.eps == pytest.approx(2.0 * complex(math.cos(0.7), math.sin(0.7)))
    assert p.q_m == pytest.approx(2000.0)


def test_apply_scheme_matrix():
    base = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-4, g_coupling=0.1,
                         eps_mag=0.3, eps_phase=1.1, bath=make_bath(0.8, 0.2),
                         n_th=10.0)
    sb = apply_scheme(base, Scheme.SB)
    assert sb.eps_mag == 0.0 and sb.bath.r_s == 0.0
    es = apply_scheme(base, Scheme.ES)
    assert es.eps_mag == 0.0 and es.bath == base.bath
    is_ = apply_scheme(base, Scheme.IS)
    assert is_.eps_mag == base.eps_mag and is_.bath.r_s == 0.0
    assert apply_scheme(base, Scheme.ESIS) == base
    for scheme in Scheme:
        once = apply_scheme(base, scheme)
        assert apply_scheme(once, scheme) == once
        assert once.n_th == base.n_th and once.kappa == base.kappa


def test_rate_set_gamma_opt():
    rs = RateSet(gamma_minus=0.5, gamma_plus=0.2)
    assert rs.gamma_opt == pytest.approx(0.3)
    assert rs.normalized is False
    assert RateSet(0.1, 0.4, normalized=True).gamma_opt == pytest.approx(-0.3)


def test_thermal_occupancy():
    assert thermal_occupancy(0.0, 1e6) == 0.0
    omega = 1e-3 * constants.k / constants.hbar
    assert thermal_occupancy(1.0, omega) == pytest.approx(
        999.500083333332, rel=1e-9)
    values = [thermal_occupancy(t, 1e7) for t in (0.1, 1.0, 10.0, 300.0)]
    assert all(b > a for a, b in zip(values, values[1:]))
    with pytest.raises(InvalidParameterError):
        thermal_occupancy(-1.0, 1e6)
    with pytest.raises(InvalidParameterError):
        thermal_occupancy(1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        thermal_occupancy(math.inf, 1e6)


def test_records_support_replace():
    p = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-4, g_coupling=0.1)
    q = replace(p, delta=2.0)
    assert q.delta == 2.0 and q.kappa == p.kappa
    with pytest.raises(InvalidParameterError):
        replace(p, gamma=-1.0)
