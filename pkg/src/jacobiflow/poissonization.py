"""Homogeneous Poisson structure on J x R^x built from a Jacobi structure.

The extended space appends the fiber coordinate t as the LAST coordinate.
The bivector matrix is Pi(x, t) = [[L(x)/t, -E(x)], [E(x)^T, 0]] in the same
storage convention as `jacobi` ({F, G} = grad(F).Pi.grad(G)), which is the
block form of L/t + d/dt ^ E.  The scaling action h_z(x, t) = (x, z t) makes
Pi homogeneous of degree -1:  Dh_z . Pi(p) . Dh_z^T = z * Pi(h_z(p)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InputError
from .fields import FD_STEP, ScalarField, fd_jacobian
from .jacobi import JacobiStructure

T_FLOOR = 1e-300


def _check_fiber(t: float) -> None:
    if abs(t) < T_FLOOR:
        raise DomainError("fiber coordinate t must be nonzero")


@dataclass(frozen=True)
class ScalingAction:
    """Principal R^x action h_z(x, t) = (x, z t) and its tangent/cotangent lifts."""

    dim_p: int

    def apply(self, z: float, y: np.ndarray) -> np.ndarray:
        self._check_z(z)
        y = np.asarray(y, dtype=float).copy()
        y[-1] *= z
        return y

    def jacobian(self, z: float) -> np.ndarray:
        """Constant Jacobian diag(1, ..., 1, z) of h_z."""
        self._check_z(z)
        d = np.ones(self.dim_p)
        d[-1] = z
        return np.diag(d)

    def tangent_lift(self, z: float, y: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(x, t, xdot, tdot) -> (x, z t, xdot, z tdot)."""
        self._check_z(z)
        v = np.asarray(v, dtype=float).copy()
        v[-1] *= z
        return self.apply(z, y), v

    def cotangent_lift(self, z: float, y: np.ndarray, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(x, t, xi_x, xi_t) -> (x, z t, z xi_x, xi_t)."""
        self._check_z(z)
        xi = np.asarray(xi, dtype=float).copy()
        xi[:-1] *= z
        return self.apply(z, y), xi

    def cotangent_jacobian(self, z: float) -> np.ndarray:
        """Constant Jacobian of the cotangent lift on stacked (y, xi) coordinates."""
        self._check_z(z)
        d = np.ones(2 * self.dim_p)
        d[self.dim_p - 1] = z
        d[self.dim_p:-1] = z
        return np.diag(d)

    def _check_z(self, z: float) -> None:
        if z == 0.0:
            raise InputError("scaling parameter z must be nonzero")


@dataclass(frozen=True)
class HomogeneousPoissonStructure:
    """Bivector matrix field Pi on the extended space, with derivative access.

    pi_jac maps y to D with D[i, j, k] = d_k Pi[i, j]; pi_hess maps y to
    H with H[i, j, k, l] = d_k d_l Pi[i, j].
    """

    dim_p: int
    pi: Callable[[np.ndarray], np.ndarray]
    action: ScalingAction
    pi_jac: Callable[[np.ndarray], np.ndarray] | None = None
    pi_hess: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    def matrix(self, y: np.ndarray) -> np.ndarray:
        y = self._check_point(y)
        return np.asarray(self.pi(y), dtype=float)

    def jac(self, y: np.ndarray) -> np.ndarray:
        y = self._check_point(y)
        if self.pi_jac is not None:
            return np.asarray(self.pi_jac(y), dtype=float)
        return fd_jacobian(self.pi, y)

    def hess(self, y: np.ndarray) -> np.ndarray:
        y = self._check_point(y)
        if self.pi_hess is not None:
            return np.asarray(self.pi_hess(y), dtype=float)
        return fd_jacobian(self.jac, y, scale=1e-4)

    @property
    def has_analytic_jac(self) -> bool:
        return self.pi_jac is not None

    def _check_point(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.dim_p,):
            raise InputError(f"expected point of dim {self.dim_p}, got shape {y.shape}")
        _check_fiber(y[-1])
        return y


@dataclass(frozen=True)
class LiftedHamiltonian:
    """1-homogeneous lift H^P(x, t) = t H(x) of a Hamiltonian on the base."""

    base: ScalarField

    @property
    def dim_p(self) -> int:
        return self.base.dim + 1

    def __call__(self, y: np.ndarray) -> float:
        y = np.asarray(y, dtype=float)
        return y[-1] * self.base(y[:-1])

    def gradient(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        x, t = y[:-1], y[-1]
        return np.concatenate([t * self.base.gradient(x), [self.base(x)]])


def poissonize(structure: JacobiStructure) -> HomogeneousPoissonStructure:
    """Assemble Pi(x, t) = L(x)/t + d/dt ^ E(x) with t as last coordinate."""
    n = structure.dim
    dim_p = n + 1

    def pi(y: np.ndarray) -> np.ndarray:
        x, t = y[:-1], y[-1]
        _check_fiber(t)
        out = np.zeros((dim_p, dim_p))
        out[:n, :n] = structure.lam(x) / t
        e = structure.e(x)
        out[:n, n] = -e
        out[n, :n] = e
        return out

    analytic = structure.lambda_jac is not None and structure.e_jac is not None

    def pi_jac(y: np.ndarray) -> np.ndarray:
        x, t = y[:-1], y[-1]
        _check_fiber(t)
        out = np.zeros((dim_p, dim_p, dim_p))
        lam_d = structure.lam_jac(x)
        e_d = structure.e_jacobian(x)
        out[:n, :n, :n] = lam_d / t
        out[:n, :n, n] = -structure.lam(x) / t**2
        out[:n, n, :n] = -e_d
        out[n, :n, :n] = e_d
        return out

    return HomogeneousPoissonStructure(
        dim_p=dim_p,
        pi=pi,
        action=ScalingAction(dim_p),
        pi_jac=pi_jac if analytic else None,
        name=f"poissonized({structure.name})" if structure.name else "",
    )


def check_pi_homogeneity(
    structure: HomogeneousPoissonStructure,
    points: Sequence[np.ndarray],
    zs: Sequence[float],
) -> float:
    """Max homogeneity defect ||Dh_z Pi(p) Dh_z^T - z Pi(h_z(p))||_inf over samples."""
    act = structure.action
    worst = 0.0
    for p in points:
        p = np.asarray(p, dtype=float)
        pi_p = structure.matrix(p)
        for z in zs:
            dh = act.jacobian(z)
            defect = dh @ pi_p @ dh.T - z * structure.matrix(act.apply(z, p))
            worst = max(worst, float(np.max(np.abs(defect))))
    return worst


def lift_hamiltonian(hamiltonian: ScalarField) -> LiftedHamiltonian:
    return LiftedHamiltonian(hamiltonian)


@dataclass(frozen=True)
class CasimirReport:
    jacobi_residual: float
    lifted_residual: float
    tol: float

    @property
    def jacobi_pass(self) -> bool:
        return self.jacobi_residual <= self.tol

    @property
    def lifted_pass(self) -> bool:
        return self.lifted_residual <= self.tol

    @property
    def passed(self) -> bool:
        return self.jacobi_pass and self.lifted_pass


def casimir_lift_check(
    structure: JacobiStructure,
    f: ScalarField,
    points: Sequence[np.ndarray],
    tol: float,
    fiber_values: Sequence[float] = (1.0, 2.0, -0.5),
) -> CasimirReport:
    """Compare the direct Jacobi-Casimir test with the lifted Poisson-Casimir test.

    Direct test: ||L . grad(f)|| and |E(f)| at the sampled base points.
    Lifted test: ||Pi . grad(f^)|| at the lifted points, f^(x, t) = f(x).
    """
    if f.dim != structure.dim:
        raise InputError("casimir candidate dimension mismatch")
    pstruct = poissonize(structure)
    jac_res = 0.0
    lift_res = 0.0
    for p in points:
        p = np.asarray(p, dtype=float)
        df = f.gradient(p)
        jac_res = max(jac_res, float(np.max(np.abs(structure.lam(p) @ df))))
        jac_res = max(jac_res, abs(float(structure.e(p) @ df)))
        dlift = np.concatenate([df, [0.0]])
        for t in fiber_values:
            _check_fiber(t)
            y = np.concatenate([p, [t]])
            lift_res = max(lift_res, float(np.max(np.abs(pstruct.matrix(y) @ dlift))))
    return CasimirReport(jac_res, lift_res, tol)


def cotangent_lift_apply(
    action: ScalingAction, z: float, y: np.ndarray, xi: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Apply the cotangent lift of h_z to a covector (y, xi)."""
    if z == 0.0:
        raise InputError("scaling parameter z must be nonzero")
    return action.cotangent_lift(z, y, xi)
