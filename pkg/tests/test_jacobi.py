import numpy as np
import pytest

from jacobiflow import (
    InputError,
    ScalarField,
    TestFunctionBasis,
    broken_structure,
    canonical_contact_structure,
    check_antisymmetry,
    check_jacobi_identity,
    coordinate_field,
    hamiltonian_vf_eval,
    jacobi_bracket_eval,
    leibniz_defect,
    product_field,
    so3_structure,
)

RNG = np.random.default_rng(42)
POINTS = [np.array([1.0, 0.3, 0.2])] + [0.5 * RNG.standard_normal(3) for _ in range(3)]


def test_contact_coordinate_brackets():
    # {q, p} = -1, {q, z} = q (from the f E(g) term), {p, z} = 0 + p... check directly
    s = canonical_contact_structure(1)
    q, p, z = (coordinate_field(3, i) for i in range(3))
    x = np.array([1.3, -0.8, 0.5])
    assert jacobi_bracket_eval(s, q, p, x) == pytest.approx(-1.0)
    assert jacobi_bracket_eval(s, p, q, x) == pytest.approx(1.0)
    # {q, z} = Lambda(dq, dz) + q E(z) = 0 - q = -q
    assert jacobi_bracket_eval(s, q, z, x) == pytest.approx(-x[0])
    # {p, z} = Lambda(dp, dz) + p E(z) = p - p = 0
    assert jacobi_bracket_eval(s, p, z, x) == pytest.approx(0.0)


def test_bracket_antisymmetry_random_fields():
    s = canonical_contact_structure(1)
    f = product_field(3, 0, 1)
    g = product_field(3, 1, 2)
    for x in POINTS:
        assert jacobi_bracket_eval(s, f, g, x) == pytest.approx(-jacobi_bracket_eval(s, g, f, x))


def test_hamiltonian_vf_contact_equations():
    # X_H = (H_p, -H_q - p H_z, p H_p - H) on the canonical contact structure
    s = canonical_contact_structure(1)
    h = ScalarField(3, lambda x: float(0.5 * (x[0] ** 2 + x[1] ** 2) + 0.2 * x[2]))
    x = np.array([1.0, 0.0, 0.0])
    assert np.allclose(hamiltonian_vf_eval(s, h, x), [0.0, -1.0, -0.5], atol=1e-9)
    for x in POINTS:
        q, p, _ = x
        hq, hp, hz = h.gradient(x)
        expected = [hp, -hq - p * hz, p * hp - h(x)]
        assert np.allclose(hamiltonian_vf_eval(s, h, x), expected, atol=1e-8)


def test_constant_hamiltonian_flows_along_e():
    s = canonical_contact_structure(1)
    one = ScalarField(3, lambda x: 1.0, grad=lambda x: np.zeros(3))
    x = np.array([0.4, -0.2, 0.9])
    assert np.allclose(hamiltonian_vf_eval(s, one, x), s.e(x))


def test_jacobi_identity_contact_and_so3_pass():
    basis = TestFunctionBasis.default(3)
    for s in (canonical_contact_structure(1), so3_structure()):
        report = check_jacobi_identity(s, basis, POINTS, tol=1e-6)
        assert report.passed, f"{s.name}: {report.max_residual}"


def test_jacobi_identity_broken_fails_with_known_residual():
    s = broken_structure()
    q, p, z = (coordinate_field(3, i) for i in range(3))
    basis = TestFunctionBasis((q, p, z))
    # the cyclic jacobiator of (q, p, z) is 2q - 1 in closed form: 1.0 at q = 1
    report = check_jacobi_identity(s, basis, [np.array([1.0, 0.3, 0.2])], tol=1e-6)
    assert not report.passed
    assert report.max_residual == pytest.approx(1.0, abs=1e-4)


def test_leibniz_defect_vanishes():
    s = canonical_contact_structure(1)
    f = coordinate_field(3, 0)
    g = coordinate_field(3, 1)
    h = product_field(3, 1, 2)
    for x in POINTS:
        assert leibniz_defect(s, f, g, h, x) < 1e-8


def test_antisymmetry_check():
    assert check_antisymmetry(canonical_contact_structure(1), POINTS) == 0.0
    assert check_antisymmetry(so3_structure(), POINTS) == 0.0


def test_dimension_mismatch_rejected():
    s = canonical_contact_structure(1)
    f = coordinate_field(2, 0)
    with pytest.raises(InputError):
        jacobi_bracket_eval(s, f, f, np.zeros(3))
    with pytest.raises(InputError):
        s.lam(np.zeros(4))
