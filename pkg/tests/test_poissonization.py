import numpy as np
import pytest

from jacobiflow import (
    DomainError,
    InputError,
    ScalarField,
    ScalingAction,
    broken_structure,
    canonical_contact_structure,
    casimir_lift_check,
    check_pi_homogeneity,
    coordinate_field,
    constant_field,
    lift_hamiltonian,
    poissonize,
    so3_structure,
)
from jacobiflow.fields import fd_gradient, fd_jacobian

RNG = np.random.default_rng(1)


def lifted_points(n: int = 4, dim: int = 4) -> list[np.ndarray]:
    pts = []
    for _ in range(n):
        y = RNG.standard_normal(dim)
        y[-1] = np.sign(y[-1] or 1.0) * (0.5 + abs(y[-1]))
        pts.append(y)
    return pts


def test_contact_pi_matrix_layout():
    ps = poissonize(canonical_contact_structure(1))
    q, p, z, t = 0.7, -1.1, 0.4, 2.0
    pi = ps.matrix(np.array([q, p, z, t]))
    expected = np.array(
        [
            [0.0, -1.0 / t, 0.0, 0.0],
            [1.0 / t, 0.0, p / t, 0.0],
            [0.0, -p / t, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ]
    )
    assert np.allclose(pi, expected)
    assert np.allclose(pi, -pi.T)


def test_pi_jacobian_analytic_matches_fd():
    ps = poissonize(canonical_contact_structure(1))
    assert ps.has_analytic_jac
    for y in lifted_points():
        assert np.allclose(ps.jac(y), fd_jacobian(ps.pi, y), atol=1e-7)


def test_pi_homogeneity_exact():
    for base in (canonical_contact_structure(1), so3_structure(), broken_structure()):
        ps = poissonize(base)
        defect = check_pi_homogeneity(ps, lifted_points(), zs=(0.5, 2.0, -3.0))
        assert defect < 1e-13, base.name


def test_fiber_guard():
    ps = poissonize(canonical_contact_structure(1))
    with pytest.raises(DomainError):
        ps.matrix(np.array([1.0, 0.0, 0.0, 0.0]))


def test_scaling_action_lifts_consistent():
    act = ScalingAction(4)
    y = np.array([1.0, 2.0, 3.0, 4.0])
    xi = np.array([0.1, 0.2, 0.3, 0.4])
    z = -2.5
    yz, xiz = act.cotangent_lift(z, y, xi)
    assert np.allclose(yz, [1.0, 2.0, 3.0, -10.0])
    assert np.allclose(xiz, [-0.25, -0.5, -0.75, 0.4])
    stacked = act.cotangent_jacobian(z) @ np.concatenate([y, xi])
    assert np.allclose(stacked, np.concatenate([yz, xiz]))
    with pytest.raises(InputError):
        act.apply(0.0, y)


def test_lifted_hamiltonian_gradient():
    h = ScalarField(3, lambda x: float(0.5 * x[1] ** 2 + x[0] * x[2]))
    hp = lift_hamiltonian(h)
    for y in lifted_points():
        assert hp(y) == pytest.approx(y[-1] * h(y[:-1]))
        assert np.allclose(hp.gradient(y), fd_gradient(hp, y), atol=1e-7)


def test_lifted_hamiltonian_is_1_homogeneous():
    h = ScalarField(3, lambda x: float(0.5 * x[1] ** 2 + x[0] * x[2]))
    hp = lift_hamiltonian(h)
    act = ScalingAction(4)
    for y in lifted_points():
        for z in (0.5, 2.0, -3.0):
            assert hp(act.apply(z, y)) == pytest.approx(z * hp(y))


def test_casimir_lift_equivalence_so3():
    s = so3_structure()
    pts = [RNG.standard_normal(3) for _ in range(3)]
    casimir = ScalarField(3, lambda m: float(m @ m), grad=lambda m: 2.0 * m)
    rep = casimir_lift_check(s, casimir, pts, tol=1e-9)
    assert rep.jacobi_pass and rep.lifted_pass and rep.passed
    non_casimir = coordinate_field(3, 0)
    rep2 = casimir_lift_check(s, non_casimir, pts, tol=1e-9)
    assert not rep2.jacobi_pass and not rep2.lifted_pass


def test_casimir_lift_equivalence_contact():
    s = canonical_contact_structure(1)
    pts = [RNG.standard_normal(3) for _ in range(3)]
    # the annihilation test (Lambda df = 0 and E(f) = 0) passes only for constants
    for f, expect in ((constant_field(3, 2.0), True), (coordinate_field(3, 2), False)):
        rep = casimir_lift_check(s, f, pts, tol=1e-9)
        assert rep.jacobi_pass == expect
        assert rep.lifted_pass == expect
