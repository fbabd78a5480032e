"""Convergence study of the implicit step on the damped oscillator.

The one-step map built from the order-2 realization and the default
generating family is second order: halving dt divides the global error
by four.  The reference solution is an RK4 integration validated by
Richardson extrapolation.
"""

import numpy as np

from jacobiflow import (
    build_karasev_alpha,
    convergence_study,
    damped_oscillator,
    default_family,
    lift_hamiltonian,
    poissonize,
    reference_flow_poisson,
    richardson_validate,
)

spec = damped_oscillator()
pstruct = poissonize(spec.structure)
real = build_karasev_alpha(pstruct, order=2)
hp = lift_hamiltonian(spec.hamiltonian)
family = default_family(hp)

x0 = np.concatenate([spec.x0, [1.0]])
t_final = 1.0

ref_err = richardson_validate(lambda y: pstruct.matrix(y).T @ hp.gradient(y), x0, t_final, 100)
print(f"reference self-consistency (Richardson, 100 vs 200 steps): {ref_err:.2e}")

dts = [0.1, 0.05, 0.025, 0.0125]
report = convergence_study(real, family, x0, t_final, dts, hp=hp)

print(f"\n{'dt':>8} {'global error':>14} {'ratio':>8}")
prev = None
for dt, err in zip(report.dts, report.errors):
    ratio = f"{prev / err:8.2f}" if prev else " " * 8
    print(f"{dt:8.4f} {err:14.4e} {ratio}")
    prev = err
print(f"\nfitted order (log-log least squares): {report.fitted_order:.3f}")
