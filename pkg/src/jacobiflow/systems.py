"""Bundled Hamiltonian systems: structure + Hamiltonian + invariants + defaults."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InputError
from .fields import ScalarField
from .jacobi import JacobiStructure
from .structures import canonical_contact_structure, so3_structure


@dataclass(frozen=True)
class SystemSpec:
    """A ready-to-run system on a Jacobi manifold.

    `casimirs` maps names to scalar fields on the base manifold; `closed_form`,
    when present, maps a time to the exact base state from the default x0.
    """

    key: str
    structure: JacobiStructure
    hamiltonian: ScalarField
    x0: np.ndarray
    coords: tuple[str, ...]
    params: dict[str, float] = field(default_factory=dict)
    casimirs: dict[str, ScalarField] = field(default_factory=dict)
    closed_form: Callable[[float], np.ndarray] | None = None
    description: str = ""


def damped_oscillator(gamma: float = 0.2) -> SystemSpec:
    """H = p^2/2 + q^2/2 + gamma z on the canonical contact structure.

    The contact Hamilton equations give q'' = -q - gamma q'; with
    x0 = (1, 0, 0) the exact solution is
    q(t) = exp(-gamma t/2) (cos(w t) + (gamma/2w) sin(w t)),
    p(t) = -exp(-gamma t/2) sin(w t)/w,  w = sqrt(1 - gamma^2/4).
    The z component has no elementary closed form and is reported as NaN.
    """
    if not 0.0 <= gamma < 2.0:
        raise InputError("gamma must lie in [0, 2) for the underdamped closed form")
    structure = canonical_contact_structure(1)

    def h(x: np.ndarray) -> float:
        q, p, z = x
        return 0.5 * (p * p + q * q) + gamma * z

    def dh(x: np.ndarray) -> np.ndarray:
        q, p, _z = x
        return np.array([q, p, gamma])

    omega = np.sqrt(1.0 - 0.25 * gamma * gamma)

    def closed_form(t: float) -> np.ndarray:
        decay = np.exp(-0.5 * gamma * t)
        q = decay * (np.cos(omega * t) + (gamma / (2.0 * omega)) * np.sin(omega * t))
        p = -decay * np.sin(omega * t) / omega
        return np.array([q, p, np.nan])

    return SystemSpec(
        key="contact-damped-oscillator",
        structure=structure,
        hamiltonian=ScalarField(3, h, grad=dh, name="H"),
        x0=np.array([1.0, 0.0, 0.0]),
        coords=("q", "p", "z"),
        params={"gamma": gamma},
        closed_form=closed_form,
        description="linearly damped oscillator as a contact Hamiltonian system",
    )


def free_particle() -> SystemSpec:
    """H = p^2/2 on the canonical contact structure; fully explicit flow."""
    structure = canonical_contact_structure(1)

    def h(x: np.ndarray) -> float:
        return 0.5 * x[1] * x[1]

    def dh(x: np.ndarray) -> np.ndarray:
        return np.array([0.0, x[1], 0.0])

    x0 = np.array([0.0, 1.0, 0.0])

    def closed_form(t: float) -> np.ndarray:
        q0, p0, z0 = x0
        return np.array([q0 + p0 * t, p0, z0 + 0.5 * p0 * p0 * t])

    return SystemSpec(
        key="contact-free-particle",
        structure=structure,
        hamiltonian=ScalarField(3, h, grad=dh, name="H"),
        x0=x0,
        coords=("q", "p", "z"),
        closed_form=closed_form,
        description="free particle contact dynamics (q' = p, p' = 0, z' = p^2/2)",
    )


def rigid_body(inertia: tuple[float, float, float] = (1.0, 2.0, 3.0)) -> SystemSpec:
    """Free rigid body on so(3)*: H = sum(m_i^2 / (2 I_i)), Casimir sum(m_i^2)."""
    if any(i <= 0 for i in inertia):
        raise InputError("moments of inertia must be positive")
    structure = so3_structure()
    inv_i = np.array([1.0 / i for i in inertia])

    def h(m: np.ndarray) -> float:
        return 0.5 * float(m @ (inv_i * m))

    def dh(m: np.ndarray) -> np.ndarray:
        return inv_i * m

    casimir = ScalarField(3, lambda m: float(m @ m), grad=lambda m: 2.0 * m, name="|m|^2")
    return SystemSpec(
        key="so3-lie-poisson",
        structure=structure,
        hamiltonian=ScalarField(3, h, grad=dh, name="H"),
        x0=np.array([1.0, 0.5, -0.5]),
        coords=("m1", "m2", "m3"),
        params={"I1": inertia[0], "I2": inertia[1], "I3": inertia[2]},
        casimirs={"m_squared": casimir},
        description="free rigid body angular momentum dynamics (E = 0 Jacobi structure)",
    )


_SYSTEMS: dict[str, Callable[[], SystemSpec]] = {
    "contact-damped-oscillator": damped_oscillator,
    "contact-free-particle": free_particle,
    "so3-lie-poisson": rigid_body,
}


def get_system(key: str, **params: float) -> SystemSpec:
    try:
        factory = _SYSTEMS[key]
    except KeyError:
        raise InputError(f"unknown system key {key!r}; known: {sorted(_SYSTEMS)}") from None
    if key == "contact-damped-oscillator" and "gamma" in params:
        return damped_oscillator(params["gamma"])
    if key == "so3-lie-poisson" and {"I1", "I2", "I3"} <= params.keys():
        return rigid_body((params["I1"], params["I2"], params["I3"]))
    if params:
        raise InputError(f"system {key!r} does not accept parameters {sorted(params)}")
    return factory()


def system_keys() -> list[str]:
    return sorted(_SYSTEMS)
