"""Command-line experiment harness.

Configs are flat UTF-8 ``key = value`` text (``#`` comments allowed); every
key has a default, most of them scenario-specific, so ``scenario = table1``
alone is a complete config.  Exit codes: 0 success, 2 config error, 3 a
convergence-tracked run hit its iteration cap, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass

from .errors import ConfigInvalid, ParamOutOfRange, ParseError, RangeError, SimulationError
from .gates import ORDER_REVERSED, ORDER_STANDARD, GateSpec
from .registers import MAX_QUBITS
from .scenarios import SCENARIOS, RunManifest, run_scenario


@dataclass
class ExperimentConfig:
    scenario: str
    k: int = 1
    n: int = 6
    phi: float = math.pi / 2
    alpha1: float = math.pi / 2
    alpha2: float = math.pi / 2
    gamma: float = 0.0
    order: str = ORDER_STANDARD
    initial: str = "zurek_ground"
    a2: float = 0.5
    max_n: int = 1000
    epsilon: float = 1e-9
    checkpoint_stride: int = 10
    iterate_max_n: int = 7
    orderings: int = 1
    seed: int = 20250809
    out: str = "."
    format: str = "csv"
    threads: int = 1

    def to_dict(self) -> dict:
        return asdict(self)


#: key -> parser; booleans/enums validated later in range checks
_SCHEMA = {
    "scenario": str,
    "k": int,
    "n": int,
    "phi": float,
    "alpha1": float,
    "alpha2": float,
    "gamma": float,
    "order": str,
    "initial": str,
    "a2": float,
    "max_n": int,
    "epsilon": float,
    "checkpoint_stride": int,
    "iterate_max_n": int,
    "orderings": int,
    "seed": int,
    "out": str,
    "format": str,
    "threads": int,
}

#: scenario-specific defaults layered over the dataclass defaults
_SCENARIO_DEFAULTS = {
    "fig1_zurek": {"n": 8, "alpha1": 0.0, "alpha2": 0.0},
    "fig3_dissipative_pips": {"n": 8},
    "fig4_alpha_sweep": {"n": 6, "max_n": 100},
    "fig5_order_diff": {"n": 8},
    "fig6_kqubit": {"n": 6, "max_n": 100},
    "table1": {"n": 6},
    "attractor_report": {"n": 2},
}


def _parse_pairs(raw: str) -> dict:
    pairs: dict = {}
    for lineno, line in enumerate(raw.splitlines(), 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        if "=" not in text:
            raise ParseError(f"line {lineno}: expected 'key = value', got {text!r}")
        key, _, value = text.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SCHEMA:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in pairs:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        try:
            pairs[key] = _SCHEMA[key](value)
        except ValueError:
            raise ParseError(
                f"line {lineno}: cannot parse {value!r} as {_SCHEMA[key].__name__} "
                f"for key {key!r}") from None
    return pairs


def _range_check(config: ExperimentConfig) -> None:
    try:
        GateSpec(phi=config.phi, alpha1=config.alpha1, alpha2=config.alpha2,
                 gamma=config.gamma, order=config.order)
    except ParamOutOfRange as exc:
        raise RangeError(str(exc)) from None
    if config.k < 1:
        raise RangeError(f"k={config.k} must be at least 1")
    if config.n < 1:
        raise RangeError(f"n={config.n} must be at least 1")
    limit = MAX_QUBITS if config.scenario != "fig6_kqubit" else MAX_QUBITS - 3
    if config.k + config.n > limit:
        raise RangeError(f"k+n={config.k + config.n} exceeds {limit} for this scenario")
    if config.scenario == "attractor_report" and config.k + config.n > 6:
        raise RangeError("attractor_report is limited to k+n <= 6")
    if not 0.0 <= config.a2 <= 1.0:
        raise RangeError(f"a2={config.a2} outside [0, 1]")
    if config.epsilon <= 0:
        raise RangeError("epsilon must be positive")
    if config.max_n < 1:
        raise RangeError("max_n must be at least 1")
    if config.checkpoint_stride < 1:
        raise RangeError("checkpoint_stride must be at least 1")
    if config.orderings < 1:
        raise RangeError("orderings must be at least 1")
    if config.threads < 1:
        raise RangeError("threads must be at least 1")
    if config.seed < 0 or config.seed >= 2 ** 64:
        raise RangeError("seed must fit an unsigned 64-bit integer")
    if config.format not in ("csv", "json"):
        raise RangeError(f"format must be csv or json, got {config.format!r}")
    if config.order not in (ORDER_STANDARD, ORDER_REVERSED):
        raise RangeError(f"order must be standard or reversed, got {config.order!r}")


def _build_config(pairs: dict) -> ExperimentConfig:
    scenario = pairs.get("scenario")
    if scenario is None:
        raise ConfigInvalid(f"missing 'scenario'; catalog: {sorted(SCENARIOS)}")
    if scenario not in SCENARIOS:
        raise ConfigInvalid(f"unknown scenario {scenario!r}; catalog: {sorted(SCENARIOS)}")
    merged = dict(_SCENARIO_DEFAULTS.get(scenario, {}))
    merged.update(pairs)
    config = ExperimentConfig(**merged)
    _range_check(config)
    return config


def validate_config(raw: str) -> ExperimentConfig:
    """Parse and range-check a config text, filling scenario defaults."""
    return _build_config(_parse_pairs(raw))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdarwin",
        description="Run a named experiment scenario and write CSV/JSON tables.")
    parser.add_argument("--config", metavar="PATH", help="config file (key = value lines)")
    parser.add_argument("--scenario", metavar="NAME",
                        help=f"scenario name, one of {sorted(SCENARIOS)}; overrides the config")
    parser.add_argument("--out", metavar="DIR", help="output directory (default '.')")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    parser.add_argument("--threads", type=int, metavar="COUNT",
                        help="worker threads for independent points")
    parser.add_argument("--seed", type=int, metavar="U64",
                        help="seed for randomized trace-out orderings")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = ""
        if args.config:
            with open(args.config, encoding="utf-8") as handle:
                raw = handle.read()
        pairs = _parse_pairs(raw)
        for key in ("scenario", "out", "format", "threads", "seed"):
            value = getattr(args, key)
            if value is not None:
                pairs[key] = value
        config = _build_config(pairs)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        manifest: RunManifest = run_scenario(config)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4

    for entry in manifest.convergence:
        tag = {True: "converged", False: "NOT converged", None: "fixed-N"}[entry["converged"]]
        print(f"{entry['curve']}: N={entry['iterations']} ({tag})")
    for name in manifest.outputs:
        print(f"wrote {name}")
    if any(entry["converged"] is False for entry in manifest.convergence):
        print("warning: at least one run hit its iteration cap", file=sys.stderr)
        return 3
    return 0


def run() -> None:  # console entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
