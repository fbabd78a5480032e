"""Jacobi structures in coordinates: bracket, Hamiltonian vector fields, identity checks.

Conventions used throughout the package:

* the bivector is stored as an antisymmetric matrix ``L(x)`` with
  ``{f, g} = grad(f) . L(x) . grad(g) + f E(g) - g E(f)``;
* the Hamiltonian vector field is the derivation part of ``{H, .}``,
  ``X_H = L(x)^T grad(H) + H E(x)``, so that on the canonical contact
  structure (coordinates q, p, z with ``{q, p} = -1``, ``E = -d/dz``)
  it reduces to the contact Hamilton equations
  ``dq = H_p,  dp = -H_q - p H_z,  dz = p H_p - H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .errors import InputError, NumericError
from .fields import (
    FD_STEP_NESTED,
    ScalarField,
    constant_field,
    coordinate_field,
    fd_gradient,
    fd_jacobian,
    product_field,
)


@dataclass(frozen=True)
class JacobiStructure:
    """Bivector/vector field pair (L, E) on a single coordinate chart.

    lambda_jac, when given, maps x to the array D with D[i, j, k] = d_k L[i, j];
    e_jac maps x to D with D[i, k] = d_k E[i].
    """

    dim: int
    lambda_field: Callable[[np.ndarray], np.ndarray]
    e_field: Callable[[np.ndarray], np.ndarray]
    lambda_jac: Callable[[np.ndarray], np.ndarray] | None = None
    e_jac: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InputError(f"JacobiStructure dim must be positive, got {self.dim}")

    def lam(self, x: np.ndarray) -> np.ndarray:
        x = self._check_point(x)
        return np.asarray(self.lambda_field(x), dtype=float)

    def e(self, x: np.ndarray) -> np.ndarray:
        x = self._check_point(x)
        return np.asarray(self.e_field(x), dtype=float)

    def lam_jac(self, x: np.ndarray) -> np.ndarray:
        x = self._check_point(x)
        if self.lambda_jac is not None:
            return np.asarray(self.lambda_jac(x), dtype=float)
        return fd_jacobian(self.lambda_field, x)

    def e_jacobian(self, x: np.ndarray) -> np.ndarray:
        x = self._check_point(x)
        if self.e_jac is not None:
            return np.asarray(self.e_jac(x), dtype=float)
        return fd_jacobian(self.e_field, x)

    def _check_point(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise InputError(f"expected point of dim {self.dim}, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise InputError("point has non-finite coordinates")
        return x


@dataclass(frozen=True)
class TestFunctionBasis:
    """Ordered list of test functions used when sampling bracket identities."""

    functions: tuple[ScalarField, ...]

    def __post_init__(self) -> None:
        if not self.functions:
            raise InputError("TestFunctionBasis must be nonempty")
        dims = {f.dim for f in self.functions}
        if len(dims) != 1:
            raise InputError(f"basis functions disagree on dim: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.functions[0].dim

    @classmethod
    def default(cls, dim: int) -> "TestFunctionBasis":
        fns: list[ScalarField] = [coordinate_field(dim, i) for i in range(dim)]
        fns += [product_field(dim, i, j) for i in range(dim) for j in range(i, dim)]
        fns.append(constant_field(dim, 1.0))
        return cls(tuple(fns))


def _check_same_dim(structure: JacobiStructure, *fields: ScalarField) -> None:
    for f in fields:
        if f.dim != structure.dim:
            raise InputError(f"dimension mismatch: structure dim {structure.dim}, field '{f.name}' dim {f.dim}")


def jacobi_bracket_eval(structure: JacobiStructure, f: ScalarField, g: ScalarField, x: np.ndarray) -> float:
    """Evaluate {f, g} = grad(f).L.grad(g) + f E(g) - g E(f) at x."""
    _check_same_dim(structure, f, g)
    x = structure._check_point(x)
    df = f.gradient(x)
    dg = g.gradient(x)
    lam = structure.lam(x)
    e = structure.e(x)
    val = float(df @ lam @ dg) + f(x) * float(e @ dg) - g(x) * float(e @ df)
    if not np.isfinite(val):
        raise NumericError(f"non-finite bracket value at x={x}")
    return val


def hamiltonian_vf_eval(structure: JacobiStructure, hamiltonian: ScalarField, x: np.ndarray) -> np.ndarray:
    """Evaluate X_H = L^T grad(H) + H E at x."""
    _check_same_dim(structure, hamiltonian)
    x = structure._check_point(x)
    dh = hamiltonian.gradient(x)
    vf = structure.lam(x).T @ dh + hamiltonian(x) * structure.e(x)
    if not np.all(np.isfinite(vf)):
        bad = int(np.flatnonzero(~np.isfinite(vf))[0])
        raise NumericError(f"non-finite Hamiltonian vector field at coordinate {bad}")
    return vf


def _bracket_field(structure: JacobiStructure, f: ScalarField, g: ScalarField) -> ScalarField:
    """The bracket {f, g} as a new scalar field (gradient by nested finite differences)."""

    def fn(x: np.ndarray) -> float:
        return jacobi_bracket_eval(structure, f, g, x)

    return ScalarField(
        structure.dim,
        fn,
        grad=lambda x: fd_gradient(fn, x, scale=FD_STEP_NESTED),
        name=f"{{{f.name},{g.name}}}",
    )


@dataclass(frozen=True)
class JacobiIdentityReport:
    max_residual: float
    worst_triple: tuple[str, str, str]
    worst_point: np.ndarray
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def check_jacobi_identity(
    structure: JacobiStructure,
    basis: TestFunctionBasis,
    points: Sequence[np.ndarray],
    tol: float,
) -> JacobiIdentityReport:
    """Max cyclic residual |{{f,g},h} + {{g,h},f} + {{h,f},g}| over basis triples and points."""
    if len(basis.functions) < 3:
        raise InputError("need at least 3 basis functions")
    if len(points) < 1:
        raise InputError("need at least one sample point")
    _check_same_dim(structure, *basis.functions)

    worst = -1.0
    worst_triple = ("", "", "")
    worst_point = np.asarray(points[0], dtype=float)
    for f, g, h in combinations(basis.functions, 3):
        fg = _bracket_field(structure, f, g)
        gh = _bracket_field(structure, g, h)
        hf = _bracket_field(structure, h, f)
        for p in points:
            res = (
                jacobi_bracket_eval(structure, fg, h, p)
                + jacobi_bracket_eval(structure, gh, f, p)
                + jacobi_bracket_eval(structure, hf, g, p)
            )
            if np.isnan(res):
                raise NumericError(f"NaN jacobiator residual for ({f.name},{g.name},{h.name}) at {p}")
            if abs(res) > worst:
                worst = abs(res)
                worst_triple = (f.name, g.name, h.name)
                worst_point = np.asarray(p, dtype=float)
    return JacobiIdentityReport(worst, worst_triple, worst_point, tol)


def leibniz_defect(
    structure: JacobiStructure, f: ScalarField, g: ScalarField, h: ScalarField, x: np.ndarray
) -> float:
    """|{fg, h} - f{g, h} - g{f, h} + fg{1, h}| at x; zero for any valid structure."""
    _check_same_dim(structure, f, g, h)
    x = structure._check_point(x)

    def prod_grad(y: np.ndarray) -> np.ndarray:
        return f.gradient(y) * g(y) + g.gradient(y) * f(y)

    fg = ScalarField(structure.dim, lambda y: f(y) * g(y), grad=prod_grad, name=f"{f.name}*{g.name}")
    one = constant_field(structure.dim, 1.0)
    val = (
        jacobi_bracket_eval(structure, fg, h, x)
        - f(x) * jacobi_bracket_eval(structure, g, h, x)
        - g(x) * jacobi_bracket_eval(structure, f, h, x)
        + f(x) * g(x) * jacobi_bracket_eval(structure, one, h, x)
    )
    return abs(val)


def check_antisymmetry(structure: JacobiStructure, points: Sequence[np.ndarray]) -> float:
    """Max |L + L^T| entry over the sampled points."""
    worst = 0.0
    for p in points:
        lam = structure.lam(np.asarray(p, dtype=float))
        worst = max(worst, float(np.max(np.abs(lam + lam.T))))
    return worst
