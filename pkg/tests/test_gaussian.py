"""Drift/diffusion construction and the exact Gaussian steady state."""

import math
from dataclasses import replace

import numpy as np
import pytest

import _oracles as orc
from sqzcool import (
    NumericalError,
    ReducedParams,
    Scheme,
    UnstableSystemError,
    apply_scheme,
    build_diffusion,
    build_drift,
    make_bath,
    parametric_threshold,
    stability,
    steady_state,
    symplectic_form,
)

REF = ReducedParams(delta=math.hypot(1.0, 200.0), kappa=400.0, gamma=1e-5,
                    g_coupling=1.0, n_th=1000.0)


def test_drift_optical_eigenvalues_decoupled():
    # at g = 0 the optical block has eigenvalues -kappa/2 +- sqrt(4 eps^2
    # - delta^2), independent of the drive phase
    for eps, phase in ((0.3, 0.0), (0.3, 0.7), (1.4, 0.7), (1.4, 2.2)):
        p = ReducedParams(delta=2.0, kappa=0.8, gamma=1e-3, g_coupling=0.0,
                          eps_mag=eps, eps_phase=phase)
        eigs = np.linalg.eigvals(build_drift(p)[:2, :2])
        disc = 4.0 * eps**2 - p.delta**2
        if disc < 0.0:
            expected = np.array([complex(-0.4, math.sqrt(-disc)),
                                 complex(-0.4, -math.sqrt(-disc))])
        else:
            expected = np.array([-0.4 + math.sqrt(disc), -0.4 - math.sqrt(disc)])
        assert np.allclose(np.sort_complex(eigs), np.sort_complex(expected),
                           rtol=1e-12, atol=1e-12)


def test_drift_mechanical_block():
    p = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-3, g_coupling=0.2,
                      omega_m=1.5)
    a = build_drift(p)
    assert np.allclose(a[2:, 2:], [[-5e-4, 1.5], [-1.5, -5e-4]])
    assert a[1, 2] == -0.4 and a[3, 0] == -0.4
    assert a[0, 2] == a[0, 3] == a[2, 0] == a[2, 1] == 0.0


def test_diffusion_vacuum():
    p = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-3, g_coupling=0.2,
                      n_th=10.0)
    d = build_diffusion(p)
    assert np.allclose(d[:2, :2], 0.25 * np.eye(2))
    assert np.allclose(d[2:, 2:], 1e-3 * 10.5 * np.eye(2))


def test_diffusion_squeezed_axes():
    base = ReducedParams(delta=1.0, kappa=2.0, gamma=1e-3, g_coupling=0.2)
    bath = make_bath(0.9, 0.0)
    d = build_diffusion(replace(base, bath=bath))
    assert d[0, 0] == pytest.approx(2.0 * (bath.n_s + 0.5 + bath.m_s))
    assert d[1, 1] == pytest.approx(2.0 * (bath.n_s + 0.5 - bath.m_s))
    assert d[0, 1] == 0.0
    d45 = build_diffusion(replace(base, bath=make_bath(0.9, math.pi / 4.0)))
    assert d45[0, 0] == pytest.approx(2.0 * (bath.n_s + 0.5))
    assert d45[0, 1] == pytest.approx(-2.0 * bath.m_s)


def test_diffusion_optical_determinant_invariant():
    rng = np.random.default_rng(8)
    for _ in range(50):
        p = ReducedParams(delta=1.0, kappa=rng.uniform(0.1, 30), gamma=1e-3,
                          g_coupling=0.2,
                          bath=make_bath(rng.uniform(0, 3),
                                         rng.uniform(0, math.pi)))
        det = np.linalg.det(build_diffusion(p)[:2, :2])
        assert det == pytest.approx(p.kappa**2 / 4.0, rel=1e-9)


def test_symplectic_form():
    omega = symplectic_form()
    assert np.allclose(omega, -omega.T)
    assert np.allclose(omega @ omega, -np.eye(4))


def test_stability_reference():
    # decoupled cavity: stable strictly below the parametric threshold
    stable, margin = stability(replace(REF, eps_mag=141.4, g_coupling=0.0))
    assert stable and margin < 0.0
    stable, margin = stability(replace(REF, eps_mag=150.0, g_coupling=0.0))
    assert not stable and margin > 0.0
    # the optomechanical coupling destabilizes earlier
    assert not stability(replace(REF, eps_mag=141.4))[0]


def test_unstable_raises_with_margin():
    p = replace(REF, eps_mag=150.0)
    with pytest.raises(UnstableSystemError) as exc:
        steady_state(p)
    assert exc.value.max_real_eig > 0.0


def test_idle_steady_state():
    p = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-5, g_coupling=0.0,
                      n_th=1000.0)
    st = steady_state(p)
    assert st.n_b == pytest.approx(1000.0, rel=1e-12)
    assert st.n_a == pytest.approx(0.0, abs=1e-12)
    assert st.max_real_eig == pytest.approx(-5e-6, rel=1e-9)
    assert st.stable and st.residual <= 1e-9
    expected = np.diag([0.5, 0.5, 1000.5, 1000.5])
    assert np.allclose(st.covariance, expected, rtol=1e-9, atol=1e-12)


def test_bath_only_occupancies():
    p = ReducedParams(delta=1.0, kappa=0.5, gamma=1e-4, g_coupling=0.0,
                      bath=make_bath(1.0, 0.3), n_th=2.0)
    st = steady_state(p)
    assert st.n_a == pytest.approx(math.sinh(1.0) ** 2, rel=1e-12)
    assert st.n_a == pytest.approx(1.3810978455418155, rel=1e-12)
    assert st.n_b == pytest.approx(2.0, rel=1e-12)


def test_covariance_matches_scipy_oracle():
    rng = np.random.default_rng(9)
    accepted = 0
    for _ in range(3000):
        if accepted >= 200:
            break
        delta = rng.uniform(-2.0, 2.0)
        kappa = rng.uniform(0.05, 10.0)
        thr = 0.5 * math.hypot(delta, 0.5 * kappa)
        p = ReducedParams(
            delta=delta, kappa=kappa, gamma=10.0 ** rng.uniform(-4, -1),
            g_coupling=rng.uniform(0.0, 0.3),
            eps_mag=rng.uniform(0.0, 0.7) * thr,
            eps_phase=rng.uniform(0.0, 2.0 * math.pi),
            bath=make_bath(rng.uniform(0.0, 1.5), rng.uniform(0.0, math.pi)),
            n_th=rng.uniform(0.0, 50.0))
        if not stability(p)[0]:
            continue
        accepted += 1
        st = steady_state(p)
        want = orc.lyapunov_covariance(build_drift(p), build_diffusion(p))
        gap = np.linalg.norm(st.covariance - want) / np.linalg.norm(want)
        assert gap <= 1e-8
        assert st.residual <= 1e-9
        heis = st.covariance + 0.5j * symplectic_form()
        assert float(np.min(np.linalg.eigvalsh(heis))) >= -1e-8
    assert accepted >= 200


def test_weak_coupling_frozen():
    p = ReducedParams(delta=1.0, kappa=0.04, gamma=1e-5, g_coupling=1e-3,
                      n_th=100.0)
    st = steady_state(p)
    assert st.n_b == pytest.approx(9.11454873686801, rel=1e-9)
    assert st.n_a == pytest.approx(0.022726432214908332, rel=1e-9)


def test_steady_state_continuity():
    p = ReducedParams(delta=1.0, kappa=0.04, gamma=1e-5, g_coupling=1e-3,
                      n_th=100.0)
    n0 = steady_state(p).n_b
    n1 = steady_state(replace(p, delta=1.0 + 1e-6)).n_b
    assert abs(n1 - n0) / n0 <= 1e-3


def test_scheme_application_respected():
    p = replace(REF, eps_mag=50.0, eps_phase=0.3, bath=make_bath(1.0, 0.2))
    direct = steady_state(apply_scheme(p, Scheme.SB))
    stripped = steady_state(ReducedParams(delta=REF.delta, kappa=REF.kappa,
                                          gamma=REF.gamma, g_coupling=1.0,
                                          n_th=1000.0))
    assert direct.n_b == pytest.approx(stripped.n_b, rel=1e-12)
