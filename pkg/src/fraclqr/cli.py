"""Command-line interface.

Subcommands
-----------
synth        regulator synthesis: gains, closed-loop coefficients, Riccati
             residual, Hamiltonian stable eigenvalues, roots with flags
modes        characteristic polynomial, roots and stability classification
respond      full pipeline: trajectory CSV (x,y,u) plus a cost/decay summary
approx-order odd/odd approximation of a fraction
sweep        repeat synth over a linear grid of one scalar parameter

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure (the
exception class name is printed to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError, NumericalError
from .lift import CostWeights, DirectPlant, FirstOrderPlant, PhysicalPlant
from .order import make_order, odd_approximate
from .pipeline import DEFAULT_ODD_TOL, SynthesisResult, solve_initial_conditions, synthesize
from .response import cost, decay_metric, respond

__all__ = ["main", "JobConfig"]

_SWEEPABLE = ("a", "b", "qw", "rw")


@dataclass(frozen=True)
class JobConfig:
    """Validated contents of a --config JSON document."""

    alpha: tuple[int, int]
    plant: DirectPlant | PhysicalPlant | FirstOrderPlant
    weights: CostWeights
    x0: float
    y1: float
    odd_tol: float | None


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ConfigurationError(f"missing '{key}' in {context}")
    return mapping[key]


def _parse_plant(cfg: dict):
    kind = cfg.get("plant_kind", "oscillator")
    plant = _require(cfg, "plant", "config")
    if not isinstance(plant, dict):
        raise ConfigurationError("'plant' must be an object")
    if kind == "first_order":
        return FirstOrderPlant(beta=float(_require(plant, "beta", "plant")))
    if kind != "oscillator":
        raise ConfigurationError(f"unknown plant_kind {kind!r}")
    if "a" in plant or "b" in plant:
        return DirectPlant(a=float(_require(plant, "a", "plant")),
                           b=float(_require(plant, "b", "plant")))
    physical = ("m", "s", "rho", "mu", "k")
    if all(key in plant for key in physical):
        return PhysicalPlant(**{key: float(plant[key]) for key in physical})
    raise ConfigurationError(
        "plant must give (a, b), all of (m, s, rho, mu, k), or beta with "
        "plant_kind: first_order"
    )


def load_config(path: str) -> JobConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigurationError("config root must be an object")
    alpha = _require(cfg, "alpha", "config")
    try:
        alpha = (int(alpha["num"]), int(alpha["den"]))
    except (TypeError, KeyError) as exc:
        raise ConfigurationError("alpha must be an object with integer num/den") from exc
    weights_cfg = cfg.get("weights", {})
    weights = CostWeights(qw=float(weights_cfg.get("qw", 1.0)),
                          rw=float(weights_cfg.get("rw", 1.0)))
    ics = cfg.get("ics", {})
    x0 = float(ics.get("x0", 0.1))
    y1 = float(ics.get("y1", 1.0))
    if x0 <= 0:
        raise ConfigurationError("ics.x0 must be > 0")
    if not np.isfinite(y1):
        raise ConfigurationError("ics.y1 must be finite")
    odd_tol = cfg.get("odd_tol", DEFAULT_ODD_TOL)
    if odd_tol is not None:
        odd_tol = float(odd_tol)
    return JobConfig(alpha=alpha, plant=_parse_plant(cfg), weights=weights,
                     x0=x0, y1=y1, odd_tol=odd_tol)


def _synthesize(config: JobConfig) -> SynthesisResult:
    return synthesize(config.alpha, config.plant, config.weights, odd_tol=config.odd_tol)


def _roots_document(result: SynthesisResult) -> list[dict]:
    report = result.report
    return [
        {
            "re": root.real,
            "im": root.imag,
            "re_negative": bool(flag_re),
            "decay": bool(flag_decay),
            "marginal": bool(marginal),
        }
        for root, flag_re, flag_decay, marginal in zip(
            result.modes.roots, result.modes.re_negative,
            result.modes.decay, report.marginal,
        )
    ]


def _plant_document(plant) -> dict:
    doc = {"kind": type(plant).__name__}
    doc.update({k: float(v) for k, v in vars(plant).items()})
    return doc


def _synth_document(result: SynthesisResult) -> dict:
    return {
        "requested_order": str(result.requested_order),
        "effective_order": str(result.order),
        "plant": _plant_document(result.plant),
        "weights": {"qw": result.weights.qw, "rw": result.weights.rw},
        "gains": result.law.gains.tolist(),
        "closed_loop_coeffs": result.closed_loop.coeffs.tolist(),
        "char_poly": result.char_coeffs.tolist(),
        "are_residual": result.riccati.residual,
        "hamiltonian_stable_eigenvalues": [
            [ev.real, ev.imag] for ev in result.decomposition.stable_eigenvalues
        ],
        "roots": _roots_document(result),
        "stability": {
            "paper_criterion": result.report.paper_criterion,
            "mode_decay": result.report.mode_decay,
        },
    }


def _modes_document(result: SynthesisResult) -> dict:
    return {
        "effective_order": str(result.order),
        "char_poly": result.char_coeffs.tolist(),
        "roots": _roots_document(result),
        "stability": {
            "paper_criterion": result.report.paper_criterion,
            "mode_decay": result.report.mode_decay,
        },
    }


def _emit_document(doc: dict, path: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _write_trajectory_csv(path: str, traj):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("x,y,u\n")
        for x, y, u in zip(traj.x, traj.y, traj.u):
            fh.write(f"{x:.15g},{y:.15g},{u:.15g}\n")


def _cmd_synth(args) -> int:
    result = _synthesize(load_config(args.config))
    _emit_document(_synth_document(result), args.out)
    return 0


def _cmd_modes(args) -> int:
    result = _synthesize(load_config(args.config))
    _emit_document(_modes_document(result), args.out)
    return 0


def _cmd_respond(args) -> int:
    config = load_config(args.config)
    result = _synthesize(config)
    rep = solve_initial_conditions(result, config.x0, config.y1)
    x_start = config.x0 if args.x_start is None else args.x_start
    x_end = config.x0 + 20.0 if args.x_end is None else args.x_end
    traj = respond(result.closed_loop, rep, result.law, (x_start, x_end, args.n))
    _write_trajectory_csv(args.csv, traj)
    estimate = cost(traj, config.weights)
    metrics = decay_metric(traj)
    summary = {
        "effective_order": str(result.order),
        "grid": {"x_start": x_start, "x_end": x_end, "n": args.n},
        "cost": estimate.value,
        "cost_tail_warning": estimate.tail_warning,
        "last_integrand": estimate.last_integrand,
        "sup_tail": metrics.sup_tail,
        "monotone_envelope": metrics.monotone_envelope,
        "quarter_maxima": list(metrics.quarter_maxima),
    }
    _emit_document(summary, args.out)
    return 0


def _cmd_approx_order(args) -> int:
    order = make_order(args.num, args.den)
    approx = order if order.is_odd_odd else odd_approximate(order, args.tol)
    print(f"{approx.p}/{approx.q}")
    return 0


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    if args.param not in _SWEEPABLE:
        raise ConfigurationError(f"sweep parameter must be one of {_SWEEPABLE}")
    if not isinstance(config.plant, DirectPlant) and args.param in ("a", "b"):
        raise ConfigurationError("sweeping a or b requires a direct-plant config")
    if args.steps < 1:
        raise ConfigurationError("sweep needs at least one step")
    values = np.linspace(args.start, args.stop, args.steps)
    rows = []
    gains_len = None
    for value in values:
        plant = config.plant
        weights = config.weights
        if args.param == "a":
            plant = DirectPlant(a=float(value), b=plant.b)
        elif args.param == "b":
            plant = DirectPlant(a=plant.a, b=float(value))
        elif args.param == "qw":
            weights = CostWeights(qw=float(value), rw=weights.rw)
        else:
            weights = CostWeights(qw=weights.qw, rw=float(value))
        result = synthesize(config.alpha, plant, weights, odd_tol=config.odd_tol)
        gains_len = result.law.gains.size
        rows.append((float(value), result))
    header = [args.param] + [f"K{j + 1}" for j in range(gains_len)] + [
        "paper_criterion", "mode_decay", "are_residual"]
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for value, result in rows:
            cells = [repr(value)]
            cells += [repr(float(g)) for g in result.law.gains]
            cells.append(str(result.report.paper_criterion).lower())
            cells.append(str(result.report.mode_decay).lower())
            cells.append(repr(result.riccati.residual))
            fh.write(",".join(cells) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraclqr",
        description="Optimal regulator synthesis for fractional-order oscillators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize the regulator")
    p_synth.add_argument("--config", required=True)
    p_synth.add_argument("--out", help="write the JSON document here (default: stdout)")
    p_synth.set_defaults(func=_cmd_synth)

    p_modes = sub.add_parser("modes", help="characteristic roots and stability")
    p_modes.add_argument("--config", required=True)
    p_modes.add_argument("--out")
    p_modes.set_defaults(func=_cmd_modes)

    p_resp = sub.add_parser("respond", help="closed-loop trajectory and cost")
    p_resp.add_argument("--config", required=True)
    p_resp.add_argument("--csv", required=True, help="trajectory output (x,y,u)")
    p_resp.add_argument("--out", help="summary JSON (default: stdout)")
    p_resp.add_argument("--x-start", type=float, default=None)
    p_resp.add_argument("--x-end", type=float, default=None)
    p_resp.add_argument("--n", type=int, default=200)
    p_resp.set_defaults(func=_cmd_respond)

    p_approx = sub.add_parser("approx-order", help="odd/odd order approximation")
    p_approx.add_argument("--num", type=int, required=True)
    p_approx.add_argument("--den", type=int, required=True)
    p_approx.add_argument("--tol", type=float, default=DEFAULT_ODD_TOL)
    p_approx.set_defaults(func=_cmd_approx_order)

    p_sweep = sub.add_parser("sweep", help="synth over a linear parameter grid")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--param", required=True, choices=_SWEEPABLE)
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--csv", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
