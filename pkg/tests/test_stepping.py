import numpy as np
import pytest

from jacobiflow import (
    DomainError,
    InputError,
    NewtonConfig,
    SolverError,
    build_karasev_alpha,
    default_family,
    damped_oscillator,
    flow,
    free_particle,
    jacobi_step,
    lift_hamiltonian,
    phi_step,
    poissonize,
    rigid_body,
)


def setup(spec, order=2):
    real = build_karasev_alpha(poissonize(spec.structure), order)
    hp = lift_hamiltonian(spec.hamiltonian)
    return real, default_family(hp)


def test_zero_dt_is_bitwise_identity():
    spec = damped_oscillator()
    real, fam = setup(spec)
    x0 = np.array([1.0, 0.0, 0.0, 1.0])
    res = phi_step(real, fam, 0.0, x0)
    assert np.array_equal(res.x_next, x0)
    assert res.iterations == 1
    assert res.residual_norm == 0.0


def test_free_particle_step_is_exact():
    spec = free_particle()
    real, fam = setup(spec)
    res = phi_step(real, fam, 0.25, np.array([0.0, 1.0, 0.0, 1.0]))
    assert np.allclose(res.x_next[:3], spec.closed_form(0.25), atol=1e-12)
    assert res.x_next[3] == pytest.approx(1.0)  # E(H) = 0: fiber is conserved


def test_step_is_implicit_midpoint_on_lifted_field():
    # x_next = x0 + dt X(xbar) with xbar = x0 + dt/2 X(xbar), X = Pi^T grad H^P
    spec = damped_oscillator()
    real, fam = setup(spec)
    hp = lift_hamiltonian(spec.hamiltonian)
    x0 = np.array([1.0, 0.0, 0.0, 1.0])
    dt = 0.1
    res = phi_step(real, fam, dt, x0)
    xbar = res.x_bar
    vf = real.structure.matrix(xbar).T @ hp.gradient(xbar)
    assert np.allclose(xbar, x0 + 0.5 * dt * vf, atol=1e-11)
    assert np.allclose(res.x_next, x0 + dt * vf, atol=1e-11)


def test_conformal_factor_tracks_fiber_dynamics():
    # on the damped oscillator E(H) = -gamma, so dt/dtau = gamma * t
    spec = damped_oscillator(gamma=0.2)
    real, fam = setup(spec)
    res = jacobi_step(real, fam, 0.05, spec.x0)
    assert res.conformal_factor == pytest.approx(np.exp(0.2 * 0.05), abs=1e-6)


def test_fd_jacobian_mode_agrees():
    spec = damped_oscillator()
    real, fam = setup(spec)
    x0 = np.array([0.8, -0.4, 0.3, 1.0])
    a = phi_step(real, fam, 0.1, x0, NewtonConfig(jacobian="analytic"))
    b = phi_step(real, fam, 0.1, x0, NewtonConfig(jacobian="fd"))
    assert np.allclose(a.x_next, b.x_next, atol=1e-10)


def test_reverse_flow_returns_to_start():
    spec = damped_oscillator()
    real, fam = setup(spec)
    x0 = np.array([1.0, 0.0, 0.0, 1.0])
    fwd = flow(real, fam, 0.05, 10, x0)
    back = flow(real, fam, -0.05, 10, fwd.states[-1])
    assert np.allclose(back.states[-1], x0, atol=1e-10)


def test_trust_region_rejects_large_steps():
    spec = rigid_body()
    real, fam = setup(spec)
    x0 = np.concatenate([spec.x0, [1.0]])
    with pytest.raises(SolverError):
        phi_step(real, fam, 50.0, x0, NewtonConfig(trust_region=1.0))


def test_zero_fiber_rejected():
    spec = damped_oscillator()
    real, fam = setup(spec)
    with pytest.raises(DomainError):
        phi_step(real, fam, 0.1, np.array([1.0, 0.0, 0.0, 0.0]))


def test_negative_fiber_sign_is_preserved():
    spec = damped_oscillator()
    real, fam = setup(spec)
    res = phi_step(real, fam, 0.05, np.array([1.0, 0.0, 0.0, -1.0]))
    assert res.x_next[-1] < 0.0


def test_flow_reports_failing_step_index():
    spec = rigid_body()
    real, fam = setup(spec)
    x0 = np.concatenate([spec.x0, [1.0]])
    with pytest.raises(SolverError, match="step 1"):
        flow(real, fam, 50.0, 3, x0)


def test_input_validation():
    spec = damped_oscillator()
    real, fam = setup(spec)
    with pytest.raises(InputError):
        phi_step(real, fam, 0.1, np.zeros(3))
    with pytest.raises(InputError):
        NewtonConfig(tol=-1.0)
    with pytest.raises(InputError):
        NewtonConfig(jacobian="symbolic")
    with pytest.raises(InputError):
        flow(real, fam, 0.1, -1, np.array([1.0, 0.0, 0.0, 1.0]))


def test_jacobi_step_shapes():
    spec = damped_oscillator()
    real, fam = setup(spec)
    res = jacobi_step(real, fam, 0.05, spec.x0)
    assert res.point_next.shape == (3,)
    with pytest.raises(InputError):
        jacobi_step(real, fam, 0.05, np.zeros(4))
