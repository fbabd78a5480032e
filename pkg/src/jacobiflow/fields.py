"""Scalar fields on a coordinate chart, with optional analytic gradients.

Gradients fall back to central finite differences with a per-coordinate
step h_i = FD_STEP * max(1, |x_i|).  Nested derivatives (gradients of
quantities that are themselves finite-differenced) use the coarser
FD_STEP_NESTED scaling to balance truncation against roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InputError, NumericError

FD_STEP = 1e-5
FD_STEP_NESTED = 1e-4


def fd_gradient(fn: Callable[[np.ndarray], float], x: np.ndarray, scale: float = FD_STEP) -> np.ndarray:
    """Central-difference gradient of a scalar function at x."""
    x = np.asarray(x, dtype=float)
    grad = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        h = scale * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        grad[i] = (fn(xp) - fn(xm)) / (2.0 * h)
    return grad


def fd_jacobian(fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, scale: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian of a vector/tensor valued function.

    The derivative index is appended as the LAST axis of the result.
    """
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(fn(x), dtype=float)
    out = np.empty(f0.shape + (x.shape[0],))
    for i in range(x.shape[0]):
        h = scale * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        out[..., i] = (np.asarray(fn(xp)) - np.asarray(fn(xm))) / (2.0 * h)
    return out


@dataclass(frozen=True)
class ScalarField:
    """A real-valued function of dim coordinates, with optional analytic gradient."""

    dim: int
    fn: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InputError(f"ScalarField dim must be positive, got {self.dim}")

    def __call__(self, x: np.ndarray) -> float:
        return float(self.fn(np.asarray(x, dtype=float)))

    def gradient(self, x: np.ndarray, scale: float = FD_STEP) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise InputError(f"expected point of dim {self.dim}, got shape {x.shape}")
        g = np.asarray(self.grad(x), dtype=float) if self.grad is not None else fd_gradient(self.fn, x, scale)
        if not np.all(np.isfinite(g)):
            bad = int(np.flatnonzero(~np.isfinite(g))[0])
            raise NumericError(f"non-finite gradient of {self.name or 'field'} at coordinate {bad}")
        return g


def constant_field(dim: int, value: float) -> ScalarField:
    return ScalarField(dim, lambda x, v=value: v, grad=lambda x: np.zeros(dim), name=f"const({value})")


def coordinate_field(dim: int, index: int) -> ScalarField:
    e = np.zeros(dim)
    e[index] = 1.0
    return ScalarField(dim, lambda x, i=index: x[i], grad=lambda x, e=e: e.copy(), name=f"x{index}")


def product_field(dim: int, i: int, j: int) -> ScalarField:
    def grad(x: np.ndarray, i=i, j=j) -> np.ndarray:
        g = np.zeros(dim)
        g[i] += x[j]
        g[j] += x[i]
        return g

    return ScalarField(dim, lambda x, i=i, j=j: x[i] * x[j], grad=grad, name=f"x{i}*x{j}")
