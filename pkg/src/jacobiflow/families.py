"""Generating families of Lagrangian bisections on the extended space.

A family is a smooth map (s, y) -> zeta_s(y) into covectors with zeta_0 = 0.
Its graph L_s = {(y, zeta_s(y))} is the Lagrangian bisection fed to the
implicit step.  The family is paired with a variation function HH_s through

    d HH_s / dy = - d zeta_s / ds,

so the default family zeta_s(y) = -s grad(H^P)(y) has variation function
identically H^P and generates the flow of the lifted Hamiltonian.

Homogeneity: for the step to descend to the base Jacobi manifold, zeta_s must
be equivariant under the cotangent lift of the scaling action, i.e. the base
components of zeta_s scale by z and the fiber component is fixed when the
fiber coordinate t is scaled by z.  The default family satisfies this exactly
whenever H^P is the 1-homogeneous lift of a base Hamiltonian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InputError
from .fields import fd_gradient, fd_jacobian
from .poissonization import LiftedHamiltonian, ScalingAction


@dataclass(frozen=True)
class GeneratingFamily:
    """Covector-valued family zeta(s, y) with zeta(0, y) = 0."""

    dim_p: int
    zeta_fn: Callable[[float, np.ndarray], np.ndarray]
    zeta_jac: Callable[[float, np.ndarray], np.ndarray] | None = None
    name: str = ""

    def zeta(self, s: float, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.dim_p,):
            raise InputError(f"expected point of dim {self.dim_p}, got shape {y.shape}")
        return np.asarray(self.zeta_fn(s, y), dtype=float)

    def zeta_jacobian(self, s: float, y: np.ndarray) -> np.ndarray:
        """d zeta_s / dy at y, shape (dim_p, dim_p)."""
        if self.zeta_jac is not None:
            return np.asarray(self.zeta_jac(s, np.asarray(y, dtype=float)), dtype=float)
        return fd_jacobian(lambda yy: self.zeta(s, yy), np.asarray(y, dtype=float), scale=1e-6)

    def s_derivative(self, s: float, y: np.ndarray, ds: float = 1e-6) -> np.ndarray:
        """Central finite difference of zeta in the family parameter."""
        return (self.zeta(s + ds, y) - self.zeta(s - ds, y)) / (2.0 * ds)


def default_family(hp: LiftedHamiltonian) -> GeneratingFamily:
    """zeta_s(y) = -s grad(H^P)(y); variation function HH_s = H^P for all s."""
    dim_p = hp.dim_p

    def zeta_fn(s: float, y: np.ndarray) -> np.ndarray:
        return -s * hp.gradient(y)

    def zeta_jac(s: float, y: np.ndarray) -> np.ndarray:
        return -s * fd_jacobian(hp.gradient, y, scale=1e-6)

    return GeneratingFamily(dim_p, zeta_fn, zeta_jac, name="default(-s grad H^P)")


def family_homogeneity_defect(
    family: GeneratingFamily,
    action: ScalingAction,
    points: Sequence[np.ndarray],
    s_values: Sequence[float],
    zs: Sequence[float] = (0.5, 2.0, -3.0),
) -> float:
    """Max deviation of zeta_s from equivariance under the cotangent lift.

    Required: zeta_s(h_z(y)) equals the covector part of the cotangent lift
    of (y, zeta_s(y)), i.e. base components scaled by z, fiber component fixed.
    """
    worst = 0.0
    for y in points:
        y = np.asarray(y, dtype=float)
        for s in s_values:
            z0 = family.zeta(s, y)
            for z in zs:
                yz, expected = action.cotangent_lift(z, y, z0)
                worst = max(worst, float(np.max(np.abs(family.zeta(s, yz) - expected))))
    return worst


@dataclass(frozen=True)
class VariationReport:
    max_defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_defect <= self.tol


def variation_function_check(
    family: GeneratingFamily,
    variation: Callable[[float, np.ndarray], float],
    points: Sequence[np.ndarray],
    s_values: Sequence[float],
    tol: float,
    ds: float = 1e-6,
) -> VariationReport:
    """Check the pairing grad_y HH_s = - d zeta_s / ds by finite differences."""
    worst = 0.0
    for y in points:
        y = np.asarray(y, dtype=float)
        for s in s_values:
            grad_var = fd_gradient(lambda yy: variation(s, yy), y, scale=1e-6)
            dzds = family.s_derivative(s, y, ds=ds)
            worst = max(worst, float(np.max(np.abs(grad_var + dzds))))
    return VariationReport(worst, tol)
