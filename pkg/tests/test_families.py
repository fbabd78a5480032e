import numpy as np

from jacobiflow import (
    ScalarField,
    canonical_contact_structure,
    default_family,
    family_homogeneity_defect,
    lift_hamiltonian,
    poissonize,
    variation_function_check,
)

RNG = np.random.default_rng(21)
H = ScalarField(
    3,
    lambda x: float(0.5 * (x[0] ** 2 + x[1] ** 2) + 0.2 * x[2]),
    grad=lambda x: np.array([x[0], x[1], 0.2]),
)


def lifted_points(n: int = 4) -> list[np.ndarray]:
    pts = []
    for _ in range(n):
        y = RNG.standard_normal(4)
        y[-1] = np.sign(y[-1]) * (0.5 + abs(y[-1]))
        pts.append(y)
    return pts


def test_default_family_vanishes_at_s_zero():
    fam = default_family(lift_hamiltonian(H))
    for y in lifted_points():
        assert np.all(fam.zeta(0.0, y) == 0.0)


def test_default_family_is_minus_s_grad():
    hp = lift_hamiltonian(H)
    fam = default_family(hp)
    for y in lifted_points():
        for s in (0.05, -0.2):
            assert np.allclose(fam.zeta(s, y), -s * hp.gradient(y))


def test_default_family_equivariance_exact():
    fam = default_family(lift_hamiltonian(H))
    act = poissonize(canonical_contact_structure(1)).action
    defect = family_homogeneity_defect(fam, act, lifted_points(), s_values=(0.1, -0.05))
    assert defect < 1e-13


def test_variation_function_is_the_lifted_hamiltonian():
    hp = lift_hamiltonian(H)
    fam = default_family(hp)
    report = variation_function_check(
        fam,
        variation=lambda s, y: hp(y),
        points=lifted_points(),
        s_values=(0.0, 0.1, -0.3),
        tol=1e-6,
    )
    assert report.passed, report.max_defect


def test_zeta_jacobian_matches_fd():
    from jacobiflow.fields import fd_jacobian

    fam = default_family(lift_hamiltonian(H))
    for y in lifted_points(2):
        jac = fam.zeta_jacobian(0.1, y)
        fd = fd_jacobian(lambda yy: fam.zeta(0.1, yy), y, scale=1e-6)
        assert np.allclose(jac, fd, atol=1e-7)
