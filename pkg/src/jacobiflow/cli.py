"""Command line interface.

Subcommands:

* ``run``           integrate a bundled system and emit a CSV/JSON trajectory
* ``convergence``   global-error convergence study (JSON report)
* ``verify``        structure checks for a bundled system (JSON report)
* ``list-systems``  print the bundled system keys

Exit codes: 0 success, 2 configuration error, 3 solver/numerical error,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import diagnostics
from .errors import ConfigurationError, DomainError, InputError, NumericError, SolverError
from .families import default_family
from .jacobi import TestFunctionBasis, check_jacobi_identity
from .poissonization import check_pi_homogeneity, lift_hamiltonian, poissonize
from .realization import build_karasev_alpha, verify_realization
from .stepping import NewtonConfig, flow
from .structures import get_structure, structure_keys
from .systems import SystemSpec, get_system, system_keys

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacobiflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON file with defaults for the flags below")
        p.add_argument("--system", help="bundled system key (see list-systems)")
        p.add_argument("--order", type=int, help="realization truncation order (default 2)")
        p.add_argument("--tol", type=float, help="Newton tolerance (default 1e-12)")

    run = sub.add_parser("run", help="integrate a system and write the trajectory")
    common(run)
    run.add_argument("--dt", type=float, help="step size (default 0.01)")
    run.add_argument("--steps", type=int, help="number of steps (default 100)")
    run.add_argument("--output", help="output path (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")

    conv = sub.add_parser("convergence", help="global-error convergence study")
    common(conv)
    conv.add_argument("--dt", type=float, nargs="+", dest="dts", help="step sizes to test")
    conv.add_argument("--t-final", type=float, help="integration horizon (default 1.0)")
    conv.add_argument("--output", help="output path (default: stdout)")
    conv.add_argument(
        "--self-test",
        action="store_true",
        help="run the built-in study and fail unless the fitted order is ~2",
    )

    ver = sub.add_parser("verify", help="structure checks; nonzero exit on failure")
    common(ver)
    ver.add_argument("--output", help="output path (default: stdout)")

    sub.add_parser("list-systems", help="print bundled system keys")
    return parser


def _load_config(args: argparse.Namespace) -> dict:
    cfg = {}
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise ConfigurationError("config file must hold a JSON object")
    return cfg


def _option(args: argparse.Namespace, cfg: dict, name: str, default):
    value = getattr(args, name, None)
    if value is not None and value is not False:
        return value
    if name in cfg:
        return cfg[name]
    return default


def _setup(args: argparse.Namespace, cfg: dict):
    system_key = _option(args, cfg, "system", "contact-damped-oscillator")
    order = int(_option(args, cfg, "order", 2))
    tol = float(_option(args, cfg, "tol", 1e-12))
    if tol <= 0:
        raise ConfigurationError("tol must be positive")
    spec = get_system(system_key)
    pstruct = poissonize(spec.structure)
    try:
        real = build_karasev_alpha(pstruct, order)
    except ConfigurationError:
        raise
    hp = lift_hamiltonian(spec.hamiltonian)
    family = default_family(hp)
    newton = NewtonConfig(tol=tol)
    return spec, pstruct, real, hp, family, newton


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    spec, _pstruct, real, hp, family, newton = _setup(args, cfg)
    dt = float(_option(args, cfg, "dt", 0.01))
    steps = int(_option(args, cfg, "steps", 100))
    fmt = _option(args, cfg, "format", "csv")
    if dt <= 0:
        raise ConfigurationError("dt must be positive")
    if steps < 1:
        raise ConfigurationError("steps must be >= 1")

    x0 = np.concatenate([spec.x0, [1.0]])
    traj = flow(real, family, dt, steps, x0, newton)

    casimir_names = sorted(spec.casimirs)
    rows = []
    for k, state in enumerate(traj.states):
        base, t = state[:-1], state[-1]
        h = spec.hamiltonian(base)
        row = {
            "step": k,
            "time": k * dt,
            **{name: float(v) for name, v in zip(spec.coords, base)},
            "t": float(t),
            "H": float(h),
            "H_P": float(hp(state)),
            **{name: float(spec.casimirs[name](base)) for name in casimir_names},
            "newton_iters": traj.iterations[k - 1] if k > 0 else 0,
            "residual": traj.residuals[k - 1] if k > 0 else 0.0,
        }
        rows.append(row)

    if fmt == "json":
        _write(json.dumps({"system": spec.key, "dt": dt, "rows": rows}, indent=2) + "\n",
               _option(args, cfg, "output", None))
        return EXIT_OK

    header = ["step", "time", *spec.coords, "t", "H", "H_P", *casimir_names, "newton_iters", "residual"]
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for key in header:
            v = row[key]
            cells.append(str(v) if isinstance(v, int) else _fmt(v))
        lines.append(",".join(cells))
    _write("\n".join(lines) + "\n", _option(args, cfg, "output", None))
    return EXIT_OK


def _cmd_convergence(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    spec, _pstruct, real, hp, family, newton = _setup(args, cfg)
    dts = _option(args, cfg, "dts", [0.1, 0.05, 0.025, 0.0125])
    t_final = float(_option(args, cfg, "t_final", 1.0))
    x0 = np.concatenate([spec.x0, [1.0]])
    report = diagnostics.convergence_study(
        real, family, x0, t_final, [float(d) for d in dts], newton=newton, hp=hp
    )
    payload = {
        "system": spec.key,
        "order": real.order,
        "t_final": t_final,
        "dts": list(report.dts),
        "errors": list(report.errors),
        "fitted_order": report.fitted_order,
        "at_noise_floor": report.at_noise_floor,
    }
    if args.self_test:
        ok = not report.at_noise_floor and abs(report.fitted_order - 2.0) <= 0.1
        payload["self_test_passed"] = ok
        _write(json.dumps(payload, indent=2) + "\n", _option(args, cfg, "output", None))
        return EXIT_OK if ok else EXIT_VERIFY
    _write(json.dumps(payload, indent=2) + "\n", _option(args, cfg, "output", None))
    return EXIT_OK


def _verify_points(spec: SystemSpec) -> list[np.ndarray]:
    rng = np.random.default_rng(7)
    base = [spec.x0.astype(float)]
    base += [spec.x0 + 0.3 * rng.standard_normal(spec.structure.dim) for _ in range(3)]
    return base


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    key = _option(args, cfg, "system", "contact-damped-oscillator")
    if key in structure_keys() and key not in system_keys():
        return _verify_structure_only(args, cfg, key)
    spec, pstruct, real, _hp, family, newton = _setup(args, cfg)
    check_tol = 1e-6

    points = _verify_points(spec)
    basis = TestFunctionBasis.default(spec.structure.dim)
    jac_report = check_jacobi_identity(spec.structure, basis, points, tol=check_tol)

    lifted = [np.concatenate([p, [t]]) for p in points for t in (1.0, 2.0)]
    homog = check_pi_homogeneity(pstruct, lifted, zs=(0.5, 2.0, -3.0))

    rng = np.random.default_rng(11)
    pairs = [(y, 0.1 * rng.standard_normal(real.dim_p)) for y in lifted[:4]]
    real_report = verify_realization(real, pairs, tol=check_tol)

    dt = 0.05
    push = diagnostics.step_pushforward_defect(real, family, dt, lifted[:2], newton)
    step_homog = diagnostics.step_homogeneity_defect(real, family, dt, lifted[:2], newton=newton)

    payload = {
        "system": spec.key,
        "jacobi_identity": {
            "max_residual": jac_report.max_residual,
            "worst_triple": list(jac_report.worst_triple),
            "passed": jac_report.passed,
        },
        "pi_homogeneity": {"max_defect": homog, "passed": homog <= check_tol},
        "realization": {
            "unit_defect": real_report.unit_defect,
            "karasev_defect": real_report.karasev_defect,
            "homogeneity_defect": real_report.homogeneity_defect,
            "poisson_defects": {str(k): v for k, v in real_report.poisson_defects.items()},
            "poisson_exponent": real_report.poisson_exponent,
            "passed": real_report.passed(check_tol),
        },
        "step_defects": {
            "pushforward": push,
            "homogeneity": step_homog,
            "passed": step_homog <= check_tol,
        },
    }
    all_passed = (
        payload["jacobi_identity"]["passed"]
        and payload["pi_homogeneity"]["passed"]
        and payload["realization"]["passed"]
        and payload["step_defects"]["passed"]
    )
    payload["passed"] = all_passed
    _write(json.dumps(payload, indent=2) + "\n", _option(args, cfg, "output", None))
    return EXIT_OK if all_passed else EXIT_VERIFY


def _verify_structure_only(args: argparse.Namespace, cfg: dict, key: str) -> int:
    """Structure-level checks for registry entries without a bundled Hamiltonian."""
    structure = get_structure(key)
    check_tol = 1e-6
    rng = np.random.default_rng(7)
    points = [0.5 + 0.3 * rng.standard_normal(structure.dim) for _ in range(4)]
    basis = TestFunctionBasis.default(structure.dim)
    jac_report = check_jacobi_identity(structure, basis, points, tol=check_tol)
    pstruct = poissonize(structure)
    lifted = [np.concatenate([p, [t]]) for p in points for t in (1.0, 2.0)]
    homog = check_pi_homogeneity(pstruct, lifted, zs=(0.5, 2.0, -3.0))
    payload = {
        "system": key,
        "jacobi_identity": {
            "max_residual": jac_report.max_residual,
            "worst_triple": list(jac_report.worst_triple),
            "passed": jac_report.passed,
        },
        "pi_homogeneity": {"max_defect": homog, "passed": homog <= check_tol},
        "realization": None,
        "step_defects": None,
    }
    passed = payload["jacobi_identity"]["passed"] and payload["pi_homogeneity"]["passed"]
    payload["passed"] = passed
    _write(json.dumps(payload, indent=2) + "\n", _option(args, cfg, "output", None))
    return EXIT_OK if passed else EXIT_VERIFY


def _cmd_list_systems(_args: argparse.Namespace) -> int:
    for key in system_keys():
        sys.stdout.write(key + "\n")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, which matches the config-error code
        return int(exc.code) if exc.code else EXIT_OK
    handlers = {
        "run": _cmd_run,
        "convergence": _cmd_convergence,
        "verify": _cmd_verify,
        "list-systems": _cmd_list_systems,
    }
    try:
        return handlers[args.command](args)
    except (InputError, ConfigurationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (SolverError, DomainError, NumericError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
