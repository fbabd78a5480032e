"""Implicit one-step integrator built on Lagrangian bisections of a realization.

One step from x0 solves  alpha(xbar, zeta_dt(xbar)) = x0  for the intermediate
point xbar by Newton iteration and returns  x_next = beta(xbar, zeta_dt(xbar)).
With the default generating family zeta_s(y) = -s * grad(H^P)(y) this is the
implicit-midpoint-type scheme advancing the flow of the lifted Hamiltonian
vector field  X^i = Pi[j, i] d_j H^P  (the minus sign pairs the family with
the orientation of the canonical symplectic form used by the realization; see
`families.variation_function_check`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InputError, SolverError
from .families import GeneratingFamily
from .fields import fd_jacobian
from .realization import Realization


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iters: int = 50
    jacobian: str = "analytic"  # "analytic" falls back to FD when unavailable
    trust_region: float = 1.0  # max inf-norm of zeta_dt before the step refuses

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise InputError("Newton tol must be positive")
        if self.max_iters < 1:
            raise InputError("max_iters must be >= 1")
        if self.jacobian not in ("analytic", "fd"):
            raise InputError(f"unknown jacobian mode {self.jacobian!r}")


@dataclass(frozen=True)
class StepResult:
    x_bar: np.ndarray
    x_next: np.ndarray
    iterations: int
    residual_norm: float


@dataclass(frozen=True)
class JacobiStepResult:
    point_next: np.ndarray
    conformal_factor: float
    iterations: int
    residual_norm: float


@dataclass
class Trajectory:
    states: np.ndarray  # (steps + 1, dim)
    iterations: list[int] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)


def phi_step(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    x0: np.ndarray,
    cfg: NewtonConfig = NewtonConfig(),
) -> StepResult:
    """One implicit step of the extended-space integrator."""
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (real.dim_p,):
        raise InputError(f"expected state of dim {real.dim_p}, got shape {x0.shape}")
    fiber_sign = np.sign(x0[-1])
    if fiber_sign == 0.0:
        raise DomainError("fiber coordinate of the initial state must be nonzero")

    def zeta(y: np.ndarray) -> np.ndarray:
        return family.zeta(dt, y)

    def residual(y: np.ndarray) -> np.ndarray:
        return real.alpha(y, zeta(y)) - x0

    xbar = x0.copy()
    for it in range(1, cfg.max_iters + 1):
        z = zeta(xbar)
        if float(np.max(np.abs(z))) > cfg.trust_region:
            raise SolverError(
                f"generating covector left the trust region ({cfg.trust_region}); reduce dt"
            )
        res = real.alpha(xbar, z) - x0
        rnorm = float(np.max(np.abs(res)))
        if rnorm <= cfg.tol:
            return StepResult(xbar, real.beta(xbar, z), it, rnorm)
        jac = _solve_jacobian(real, family, dt, xbar, z, cfg)
        try:
            delta = np.linalg.solve(jac, res)
        except np.linalg.LinAlgError as exc:
            raise SolverError(f"singular Newton Jacobian at iteration {it}") from exc
        xbar = xbar - delta
        if np.sign(xbar[-1]) != fiber_sign:
            raise DomainError("fiber coordinate changed sign during Newton iteration")
    rnorm = float(np.max(np.abs(residual(xbar))))
    raise SolverError(f"Newton did not converge in {cfg.max_iters} iterations; last residual {rnorm:.3e}")


def _solve_jacobian(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    xbar: np.ndarray,
    z: np.ndarray,
    cfg: NewtonConfig,
) -> np.ndarray:
    if cfg.jacobian == "fd":
        return fd_jacobian(lambda y: real.alpha(y, family.zeta(dt, y)), xbar, scale=1e-6)
    da_dy, da_dxi = real.alpha_jac(xbar, z)
    dz_dy = family.zeta_jacobian(dt, xbar)
    return da_dy + da_dxi @ dz_dy


def jacobi_step(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    x0_base: np.ndarray,
    cfg: NewtonConfig = NewtonConfig(),
) -> JacobiStepResult:
    """One step of the base-space integrator: embed at fiber 1, step, project."""
    x0_base = np.asarray(x0_base, dtype=float)
    if x0_base.shape != (real.dim_p - 1,):
        raise InputError(f"expected base state of dim {real.dim_p - 1}")
    res = phi_step(real, family, dt, np.concatenate([x0_base, [1.0]]), cfg)
    return JacobiStepResult(res.x_next[:-1], float(res.x_next[-1]), res.iterations, res.residual_norm)


def flow(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    steps: int,
    x0: np.ndarray,
    cfg: NewtonConfig = NewtonConfig(),
    recorder: Callable[[int, StepResult], None] | None = None,
) -> Trajectory:
    """Iterate phi_step; stops with step-index context on the first failure."""
    if steps < 0:
        raise InputError("steps must be >= 0")
    x0 = np.asarray(x0, dtype=float)
    states = np.empty((steps + 1, x0.shape[0]))
    states[0] = x0
    traj = Trajectory(states)
    x = x0
    for k in range(steps):
        try:
            res = phi_step(real, family, dt, x, cfg)
        except (SolverError, DomainError) as exc:
            raise SolverError(f"step {k + 1} failed: {exc}") from exc
        x = res.x_next
        states[k + 1] = x
        traj.iterations.append(res.iterations)
        traj.residuals.append(res.residual_norm)
        if recorder is not None:
            recorder(k + 1, res)
    return traj
