"""Reference flows, convergence studies and structure-preservation diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InputError, NumericError
from .fields import ScalarField, fd_jacobian
from .jacobi import JacobiStructure, hamiltonian_vf_eval
from .poissonization import HomogeneousPoissonStructure, LiftedHamiltonian, _check_fiber
from .realization import Realization
from .families import GeneratingFamily
from .stepping import NewtonConfig, flow, phi_step

NOISE_FLOOR = 1e-14


@dataclass(frozen=True)
class ReferenceConfig:
    """RK4 reference resolution: substeps per unit of simulated time."""

    substeps_per_unit_time: int = 100

    def substeps(self, t_final: float) -> int:
        return max(1, int(np.ceil(self.substeps_per_unit_time * abs(t_final))))


def _rk4(f: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, t_final: float, nsteps: int) -> np.ndarray:
    x = np.asarray(x0, dtype=float).copy()
    h = t_final / nsteps
    for _ in range(nsteps):
        k1 = f(x)
        k2 = f(x + 0.5 * h * k1)
        k3 = f(x + 0.5 * h * k2)
        k4 = f(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise NumericError("reference flow produced non-finite state")
    return x


def reference_flow_poisson(
    structure: HomogeneousPoissonStructure,
    hp: LiftedHamiltonian,
    x0: np.ndarray,
    t_final: float,
    cfg: ReferenceConfig = ReferenceConfig(),
) -> np.ndarray:
    """RK4 flow of X^i = Pi[j, i] d_j H^P on the extended space."""

    def vf(y: np.ndarray) -> np.ndarray:
        _check_fiber(y[-1])
        return structure.matrix(y).T @ hp.gradient(y)

    return _rk4(vf, x0, t_final, cfg.substeps(t_final))


def reference_flow_jacobi(
    structure: JacobiStructure,
    hamiltonian: ScalarField,
    x0: np.ndarray,
    t_final: float,
    cfg: ReferenceConfig = ReferenceConfig(),
) -> np.ndarray:
    """RK4 flow of the Jacobi Hamiltonian vector field X_H on the base."""

    def vf(x: np.ndarray) -> np.ndarray:
        return hamiltonian_vf_eval(structure, hamiltonian, x)

    return _rk4(vf, x0, t_final, cfg.substeps(t_final))


def richardson_validate(
    f: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    t_final: float,
    nsteps: int,
) -> float:
    """Return ||RK4(n) - RK4(2n)||_inf, an estimate of the reference error."""
    coarse = _rk4(f, x0, t_final, nsteps)
    fine = _rk4(f, x0, t_final, 2 * nsteps)
    return float(np.max(np.abs(coarse - fine)))


@dataclass(frozen=True)
class ConvergenceReport:
    dts: tuple[float, ...]
    errors: tuple[float, ...]
    fitted_order: float
    at_noise_floor: bool


def convergence_study(
    real: Realization,
    family: GeneratingFamily,
    x0: np.ndarray,
    t_final: float,
    dts: Sequence[float],
    reference: np.ndarray | None = None,
    newton: NewtonConfig = NewtonConfig(),
    ref_cfg: ReferenceConfig = ReferenceConfig(),
    hp: LiftedHamiltonian | None = None,
) -> ConvergenceReport:
    """Global error at t_final versus dt, with a log-log least-squares slope.

    Points with error below the noise floor (1e-14 times the state scale) are
    excluded from the fit; if fewer than two usable points remain the report
    is flagged `at_noise_floor` and the fitted order is NaN.
    """
    if len(dts) < 2:
        raise InputError("need at least two step sizes")
    x0 = np.asarray(x0, dtype=float)
    if reference is None:
        if hp is None:
            raise InputError("either a reference state or the lifted Hamiltonian is required")
        reference = reference_flow_poisson(real.structure, hp, x0, t_final, ref_cfg)
    floor = NOISE_FLOOR * max(1.0, float(np.max(np.abs(reference))))
    errors = []
    for dt in dts:
        nsteps = int(round(t_final / dt))
        if abs(nsteps * dt - t_final) > 1e-12 * max(1.0, abs(t_final)):
            raise InputError(f"dt={dt} does not evenly divide t_final={t_final}")
        traj = flow(real, family, dt, nsteps, x0, newton)
        errors.append(float(np.max(np.abs(traj.states[-1] - reference))))
    usable = [(dt, e) for dt, e in zip(dts, errors) if e > floor]
    if len(usable) < 2:
        return ConvergenceReport(tuple(dts), tuple(errors), float("nan"), True)
    logs_dt = np.log([dt for dt, _ in usable])
    logs_e = np.log([e for _, e in usable])
    slope = float(np.polyfit(logs_dt, logs_e, 1)[0])
    return ConvergenceReport(tuple(dts), tuple(errors), slope, False)


@dataclass(frozen=True)
class StructureDefectReport:
    pushforward_defect: float
    homogeneity_defect: float
    casimir_drift: dict[str, float]


def step_pushforward_defect(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    points: Sequence[np.ndarray],
    newton: NewtonConfig = NewtonConfig(),
) -> float:
    """||Dphi Pi Dphi^T - Pi o phi||_inf for the one-step map phi, Dphi by FD."""
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)

        def step_map(y: np.ndarray) -> np.ndarray:
            return phi_step(real, family, dt, y, newton).x_next

        dphi = fd_jacobian(step_map, x, scale=1e-6)
        xnext = step_map(x)
        defect = dphi @ real.structure.matrix(x) @ dphi.T - real.structure.matrix(xnext)
        worst = max(worst, float(np.max(np.abs(defect))))
    return worst


def step_homogeneity_defect(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    points: Sequence[np.ndarray],
    zs: Sequence[float] = (0.5, 2.0),
    newton: NewtonConfig = NewtonConfig(),
) -> float:
    """Max ||phi(h_z(x)) - h_z(phi(x))||_inf: equivariance of the step map."""
    act = real.structure.action
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)
        stepped = phi_step(real, family, dt, x, newton).x_next
        for z in zs:
            other = phi_step(real, family, dt, act.apply(z, x), newton).x_next
            worst = max(worst, float(np.max(np.abs(other - act.apply(z, stepped)))))
    return worst


def casimir_drift(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    steps: int,
    x0: np.ndarray,
    casimirs: dict[str, Callable[[np.ndarray], float]],
    newton: NewtonConfig = NewtonConfig(),
) -> dict[str, float]:
    """Max |C(x_k) - C(x_0)| along the trajectory, per named Casimir."""
    traj = flow(real, family, dt, steps, np.asarray(x0, dtype=float), newton)
    out: dict[str, float] = {}
    for name, c in casimirs.items():
        vals = np.array([c(s) for s in traj.states])
        out[name] = float(np.max(np.abs(vals - vals[0])))
    return out


def structure_defects(
    real: Realization,
    family: GeneratingFamily,
    dt: float,
    points: Sequence[np.ndarray],
    casimirs: dict[str, Callable[[np.ndarray], float]] | None = None,
    steps: int = 50,
    newton: NewtonConfig = NewtonConfig(),
) -> StructureDefectReport:
    push = step_pushforward_defect(real, family, dt, points, newton)
    homog = step_homogeneity_defect(real, family, dt, points, newton=newton)
    drift: dict[str, float] = {}
    if casimirs:
        drift = casimir_drift(real, family, dt, steps, points[0], casimirs, newton)
    return StructureDefectReport(push, homog, drift)
