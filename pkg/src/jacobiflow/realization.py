"""Truncated Karasev-type source/target maps on the cotangent space of P.

The source map is the polynomial truncation

    alpha^i(y, xi) = y^i + 1/2 Pi[v, i] xi_v
                   + 1/12 d_u Pi[v, i] Pi[w, u] xi_v xi_w
                   + 1/48 d_u d_w Pi[v, i] Pi[k, u] Pi[l, w] xi_v xi_k xi_l

with terms of xi-degree d kept iff d <= order - 1, and the target is
beta(y, xi) = alpha(y, -xi).  The linear term is -1/2 of the spray base
velocity Pi . xi, so alpha and beta deform the projection (y, xi) -> y
symmetrically in opposite directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigurationError, InputError
from .fields import fd_jacobian
from .jacobi import JacobiStructure
from .poissonization import HomogeneousPoissonStructure, ScalingAction, poissonize
from .structures import canonical_contact_structure

VALID_ORDERS = (1, 2, 3, 4)


@dataclass(frozen=True)
class Realization:
    """Immutable pair of source/target evaluators with a truncation order."""

    order: int
    structure: HomogeneousPoissonStructure
    alpha: Callable[[np.ndarray, np.ndarray], np.ndarray]
    alpha_jac: Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]

    @property
    def dim_p(self) -> int:
        return self.structure.dim_p

    def beta(self, y: np.ndarray, xi: np.ndarray) -> np.ndarray:
        return self.alpha(y, -np.asarray(xi, dtype=float))

    def beta_jac(self, y: np.ndarray, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        da_dy, da_dxi = self.alpha_jac(y, -np.asarray(xi, dtype=float))
        return da_dy, -da_dxi


def _check_pair(dim_p: int, y: np.ndarray, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if y.shape != (dim_p,) or xi.shape != (dim_p,):
        raise InputError(f"expected point and covector of dim {dim_p}")
    return y, xi


def build_karasev_alpha(structure: HomogeneousPoissonStructure, order: int) -> Realization:
    """Assemble the truncated source map of the given order from Pi and its derivatives."""
    if order not in VALID_ORDERS:
        raise ConfigurationError(f"order must be one of {VALID_ORDERS}, got {order}")
    n = structure.dim_p

    def alpha(y: np.ndarray, xi: np.ndarray) -> np.ndarray:
        y, xi = _check_pair(n, y, xi)
        out = y.copy()
        if order >= 2:
            pi = structure.matrix(y)
            out = out + 0.5 * (pi.T @ xi)
        if order >= 3:
            dpi = structure.jac(y)
            out = out + np.einsum("viu,wu,v,w->i", dpi, pi, xi, xi) / 12.0
        if order >= 4:
            hpi = structure.hess(y)
            out = out + np.einsum("viuw,ku,lw,v,k,l->i", hpi, pi, pi, xi, xi, xi) / 48.0
        return out

    def alpha_jac(y: np.ndarray, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        y, xi = _check_pair(n, y, xi)
        if order == 2 and structure.has_analytic_jac:
            pi_d = structure.jac(y)
            da_dy = np.eye(n) + 0.5 * np.einsum("vij,v->ij", pi_d, xi)
            da_dxi = 0.5 * structure.matrix(y).T
            return da_dy, da_dxi
        da_dy = fd_jacobian(lambda yy: alpha(yy, xi), y, scale=1e-6)
        da_dxi = fd_jacobian(lambda xx: alpha(y, xx), xi, scale=1e-6)
        return da_dy, da_dxi

    return Realization(order=order, structure=structure, alpha=alpha, alpha_jac=alpha_jac)


def contact_alpha_closed_form(n: int) -> Realization:
    """Order-2 realization of the Poissonized canonical contact structure in closed form.

    Coordinates (q_1..q_n, p_1..p_n, zbar, t); covector (xi_q, xi_p, xi_z, xi_t).
    """
    if n < 1:
        raise InputError("n must be >= 1")
    structure = poissonize(canonical_contact_structure(n))
    dim_p = 2 * n + 2

    def alpha(y: np.ndarray, xi: np.ndarray) -> np.ndarray:
        y, xi = _check_pair(dim_p, y, xi)
        q, p, zbar, t = y[:n], y[n:2 * n], y[2 * n], y[2 * n + 1]
        xq, xp, xz, xt = xi[:n], xi[n:2 * n], xi[2 * n], xi[2 * n + 1]
        out = np.empty(dim_p)
        out[:n] = q + xp / (2.0 * t)
        out[n:2 * n] = p - (xq + p * xz) / (2.0 * t)
        out[2 * n] = zbar + 0.5 * (float(p @ xp) / t - xt)
        out[2 * n + 1] = t + 0.5 * xz
        return out

    generic = build_karasev_alpha(structure, 2)
    return Realization(order=2, structure=structure, alpha=alpha, alpha_jac=generic.alpha_jac)


@dataclass(frozen=True)
class RealizationReport:
    unit_defect: float
    karasev_defect: float
    homogeneity_defect: float
    poisson_defects: dict[float, float]
    poisson_exponent: float | None

    def passed(self, tol: float) -> bool:
        return max(self.unit_defect, self.karasev_defect, self.homogeneity_defect) <= tol


def _canonical_bracket_matrix(real: Realization, y: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """{alpha^a, alpha^b} under the canonical bracket on (y, xi) pairs."""
    da_dy, da_dxi = real.alpha_jac(y, xi)
    # {F, G} = dF/dy . dG/dxi - dF/dxi . dG/dy, summed over conjugate pairs
    return da_dy @ da_dxi.T - da_dxi @ da_dy.T


def poisson_map_defect(real: Realization, y: np.ndarray, xi: np.ndarray) -> float:
    """||{alpha, alpha}_can - Pi o alpha||_inf at one covector."""
    y = np.asarray(y, dtype=float)
    xi = np.asarray(xi, dtype=float)
    lhs = _canonical_bracket_matrix(real, y, xi)
    rhs = real.structure.matrix(real.alpha(y, xi))
    return float(np.max(np.abs(lhs - rhs)))


def verify_realization(
    real: Realization,
    points: Sequence[tuple[np.ndarray, np.ndarray]],
    tol: float,
    zs: Sequence[float] = (0.5, 2.0, -3.0),
    epsilons: Sequence[float] = (0.1, 0.05),
) -> RealizationReport:
    """Measure unit-section, Karasev-symmetry, homogeneity and Poisson-map defects.

    The Poisson-map defect is a truncation diagnostic: it is evaluated with the
    covector scaled to magnitude eps and reported together with the empirical
    decay exponent in eps.
    """
    act: ScalingAction = real.structure.action
    unit = 0.0
    karasev = 0.0
    homog = 0.0
    pdef: dict[float, float] = {eps: 0.0 for eps in epsilons}
    for y, xi in points:
        y = np.asarray(y, dtype=float)
        xi = np.asarray(xi, dtype=float)
        unit = max(unit, float(np.max(np.abs(real.alpha(y, np.zeros_like(xi)) - y))))
        karasev = max(karasev, float(np.max(np.abs(real.beta(y, xi) - real.alpha(y, -xi)))))
        a = real.alpha(y, xi)
        for z in zs:
            yz, xiz = act.cotangent_lift(z, y, xi)
            homog = max(homog, float(np.max(np.abs(real.alpha(yz, xiz) - act.apply(z, a)))))
        scale = float(np.max(np.abs(xi)))
        if scale == 0.0:
            continue
        for eps in epsilons:
            pdef[eps] = max(pdef[eps], poisson_map_defect(real, y, xi * (eps / scale)))
    exponent = None
    eps_sorted = sorted(epsilons, reverse=True)
    if len(eps_sorted) >= 2 and all(pdef[e] > 1e-14 for e in eps_sorted):
        logs = np.log([pdef[e] for e in eps_sorted])
        les = np.log(eps_sorted)
        exponent = float(np.polyfit(les, logs, 1)[0])
    return RealizationReport(unit, karasev, homog, pdef, exponent)


@dataclass(frozen=True)
class SprayCoefficients:
    """Optional quadratic fiber coefficients f[i][j] of the spray, keyed by index pair.

    Row index i != last coordinate: coefficient must be -1-homogeneous in t;
    i == last coordinate: 0-homogeneous in t.  The flat spray has none.
    """

    dim_p: int
    coeffs: dict[tuple[int, int], Callable[[np.ndarray], float]] | None = None

    def fiber_velocity(self, y: np.ndarray, xi: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim_p)
        if self.coeffs:
            for (i, j), fn in self.coeffs.items():
                out[j] += fn(y) * xi[i] * xi[j]
        return out

    def homogeneity_defect(self, points: Sequence[np.ndarray], zs: Sequence[float] = (0.5, 2.0)) -> float:
        """Max deviation of each coefficient from its required homogeneity class."""
        if not self.coeffs:
            return 0.0
        t_index = self.dim_p - 1
        worst = 0.0
        for (i, _j), fn in self.coeffs.items():
            for p in points:
                p = np.asarray(p, dtype=float)
                for z in zs:
                    pz = p.copy()
                    pz[-1] *= z
                    expected = fn(p) / z if i != t_index else fn(p)
                    worst = max(worst, abs(fn(pz) - expected))
        return worst


@dataclass(frozen=True)
class SprayVector:
    base_velocity: np.ndarray
    fiber_velocity: np.ndarray


def eval_flat_spray(
    structure: HomogeneousPoissonStructure,
    y: np.ndarray,
    xi: np.ndarray,
    coeffs: SprayCoefficients | None = None,
) -> SprayVector:
    """Spray value at (y, xi): base velocity Pi(y) . xi, fiber velocity from coeffs."""
    y, xi = _check_pair(structure.dim_p, y, xi)
    base = structure.matrix(y) @ xi
    fiber = coeffs.fiber_velocity(y, xi) if coeffs is not None else np.zeros_like(xi)
    return SprayVector(base, fiber)


def check_spray_homogeneity(
    structure: HomogeneousPoissonStructure,
    coeffs: SprayCoefficients | None,
    points: Sequence[tuple[np.ndarray, np.ndarray]],
    zs: Sequence[float],
) -> float:
    """Max pushforward defect of the spray under the cotangent lift of h_z."""
    act = structure.action
    n = structure.dim_p
    worst = 0.0
    for y, xi in points:
        y = np.asarray(y, dtype=float)
        xi = np.asarray(xi, dtype=float)
        sv = eval_flat_spray(structure, y, xi, coeffs)
        stacked = np.concatenate([sv.base_velocity, sv.fiber_velocity])
        for z in zs:
            dphi = act.cotangent_jacobian(z)
            yz, xiz = act.cotangent_lift(z, y, xi)
            svz = eval_flat_spray(structure, yz, xiz, coeffs)
            stacked_z = np.concatenate([svz.base_velocity, svz.fiber_velocity])
            worst = max(worst, float(np.max(np.abs(dphi @ stacked - stacked_z))))
    return worst
