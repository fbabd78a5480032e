"""Bundled Jacobi structures, registered under string keys.

* ``contact-canonical-n1`` -- canonical contact structure on (q, p, z),
  with the n >= 1 generalization available via `canonical_contact_structure`.
* ``so3-lie-poisson`` -- the so(3)* Lie-Poisson structure seen as a Jacobi
  structure with E = 0.
* ``broken-demo`` -- a deliberately invalid structure (fails the Jacobi
  identity) used as a negative control.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .jacobi import JacobiStructure


def canonical_contact_structure(n: int = 1) -> JacobiStructure:
    """Contact structure on (q_1..q_n, p_1..p_n, z) with {q_i, p_i} = -1, E = -d/dz."""
    if n < 1:
        raise InputError("n must be >= 1")
    dim = 2 * n + 1

    def lam(x: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, dim))
        p = x[n:2 * n]
        for i in range(n):
            out[i, n + i] = -1.0
            out[n + i, i] = 1.0
            out[n + i, 2 * n] = p[i]
            out[2 * n, n + i] = -p[i]
        return out

    def lam_jac(x: np.ndarray) -> np.ndarray:
        out = np.zeros((dim, dim, dim))
        for i in range(n):
            out[n + i, 2 * n, n + i] = 1.0
            out[2 * n, n + i, n + i] = -1.0
        return out

    e = np.zeros(dim)
    e[2 * n] = -1.0
    return JacobiStructure(
        dim=dim,
        lambda_field=lam,
        e_field=lambda x: e.copy(),
        lambda_jac=lam_jac,
        e_jac=lambda x: np.zeros((dim, dim)),
        name=f"contact-canonical-n{n}",
    )


def so3_structure() -> JacobiStructure:
    """so(3)* Lie-Poisson bivector L[i, j] = eps_ijk m_k, E = 0."""
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[j, i, k] = -1.0

    return JacobiStructure(
        dim=3,
        lambda_field=lambda m: eps @ m,
        e_field=lambda m: np.zeros(3),
        lambda_jac=lambda m: eps.copy(),
        e_jac=lambda m: np.zeros((3, 3)),
        name="so3-lie-poisson",
    )


def broken_structure() -> JacobiStructure:
    """d/dp ^ d/dq plus a q^2 d/dq ^ d/dz term; fails the Jacobi identity."""

    def lam(x: np.ndarray) -> np.ndarray:
        q = x[0]
        out = np.zeros((3, 3))
        out[0, 1] = -1.0
        out[1, 0] = 1.0
        out[0, 2] = q * q
        out[2, 0] = -q * q
        return out

    def lam_jac(x: np.ndarray) -> np.ndarray:
        q = x[0]
        out = np.zeros((3, 3, 3))
        out[0, 2, 0] = 2.0 * q
        out[2, 0, 0] = -2.0 * q
        return out

    e = np.array([0.0, 0.0, -1.0])
    return JacobiStructure(
        dim=3,
        lambda_field=lam,
        e_field=lambda x: e.copy(),
        lambda_jac=lam_jac,
        e_jac=lambda x: np.zeros((3, 3)),
        name="broken-demo",
    )


_STRUCTURES = {
    "contact-canonical-n1": lambda: canonical_contact_structure(1),
    "so3-lie-poisson": so3_structure,
    "broken-demo": broken_structure,
}


def get_structure(key: str) -> JacobiStructure:
    try:
        return _STRUCTURES[key]()
    except KeyError:
        raise InputError(f"unknown structure key {key!r}; known: {sorted(_STRUCTURES)}") from None


def structure_keys() -> list[str]:
    return sorted(_STRUCTURES)
