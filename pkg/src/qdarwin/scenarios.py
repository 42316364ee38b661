"""Named experiment presets and the run manifest.

Each scenario computes one or more tables (a header plus rows) that the CLI
writes as CSV or JSON.  Everything is deterministic: fixed summation order,
fixed iteration schedules, and seeded trace-out orderings, so re-running a
config reproduces the output files byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .attractor import candidate_eigenvalues, closed_form_stationary, solve_attractors
from .channel import iterate, run_fixed, step, uniform_digraph
from .darwinism import PipCurve, mutual_information, pip, pip_spread, random_orderings
from .errors import ConfigInvalid
from .gates import ORDER_REVERSED, GateSpec, total_unitary
from .kernels import backend_name
from .registers import RegisterLayout, initial_state
from .zurek import ZurekCase, zurek_evolve

PIP_HEADER = ("f", "L", "H_S", "H_E", "H_SE", "MI_over_Hclass")
SWEEP_HEADER = ("alpha", "MI_max_over_Hclass", "H_S")
TABLE1_HEADER = ("n", "MI_closed_form", "MI_iterated")
DIFF_HEADER = ("N", "max_MI_diff_over_Hclass")
ATTRACTOR_HEADER = ("lambda_re", "lambda_im", "dimension")

#: N values at which the standard/reversed order difference is sampled.
ORDER_DIFF_SCHEDULE = (25, 50, 100, 200, 400)
#: Number of evenly spaced dissipation strengths in the (0, pi/2] sweep.
ALPHA_SWEEP_POINTS = 25


@dataclass
class ScenarioResult:
    tables: dict[str, tuple[tuple[str, ...], list[tuple]]] = field(default_factory=dict)
    convergence: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RunManifest:
    """Record of one scenario run: resolved config, environment, convergence,
    and sha256 digests of every output file."""

    scenario: str
    config: dict
    version: str
    kernel_backend: str
    wall_time_s: float
    convergence: tuple[dict, ...]
    outputs: dict[str, str]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "config": self.config,
            "version": self.version,
            "kernel_backend": self.kernel_backend,
            "wall_time_s": self.wall_time_s,
            "convergence": list(self.convergence),
            "outputs": dict(self.outputs),
        }


def _gate(config, **overrides) -> GateSpec:
    kw = dict(phi=config.phi, alpha1=config.alpha1, alpha2=config.alpha2,
              gamma=config.gamma, order=config.order)
    kw.update(overrides)
    return GateSpec(**kw)


def _h_class_from_a2(a2: float) -> float:
    probs = np.array([a2, 1.0 - a2])
    pos = probs[probs > 0]
    return float(-np.dot(pos, np.log2(pos)))


def _pip_rows(curve: PipCurve) -> list[tuple]:
    return [(p.f, p.L, p.h_s, p.h_e, p.h_se, p.ratio) for p in curve.points]


def _evolved_pip(config, family: str, gate: GateSpec, result: ScenarioResult,
                 label: str, n: int | None = None, k: int = 1,
                 fixed_n: int | None = None) -> PipCurve:
    layout = RegisterLayout(k, config.n if n is None else n)
    digraph = uniform_digraph(layout)
    rho0 = initial_state(family, layout, a=math.sqrt(config.a2),
                         b=math.sqrt(1.0 - config.a2)) if k == 1 else \
        initial_state(family, layout)
    h_class = _h_class_from_a2(config.a2) if k == 1 else float(k)
    if fixed_n is not None:
        state = run_fixed(rho0, gate, digraph, fixed_n)
        result.convergence.append(
            {"curve": label, "iterations": fixed_n, "converged": None,
             "final_distance": None})
    else:
        report = iterate(rho0, gate, digraph, max_n=config.max_n,
                         epsilon=config.epsilon,
                         checkpoint_stride=config.checkpoint_stride)
        state = report.state
        result.convergence.append(
            {"curve": label, "iterations": report.iterations,
             "converged": report.converged,
             "final_distance": report.checkpoints[-1][1] if report.checkpoints else 0.0})
    if config.orderings > 1:
        orderings = random_orderings(layout.n, config.orderings, config.seed)
        curve, spread = pip_spread(state, orderings, h_class, threads=config.threads)
        result.extra.setdefault("ordering_spread", {})[label] = list(spread)
    else:
        curve = pip(state, h_class=h_class, threads=config.threads)
    return curve


def scenario_fig1_zurek(config) -> ScenarioResult:
    """Single-pass and iterated pure-decoherence (CNOT) partial-information
    curves for the ground-environment input."""
    result = ScenarioResult()
    a = math.sqrt(config.a2)
    b = math.sqrt(1.0 - config.a2)
    case = ZurekCase(_gate(config), config.n, a, b)  # scenario defaults: pure CNOT
    single = zurek_evolve(case).density()
    h_class = _h_class_from_a2(config.a2)
    result.tables["fig1_single_pass"] = (
        PIP_HEADER, _pip_rows(pip(single, h_class=h_class, threads=config.threads)))
    curve = _evolved_pip(config, "zurek_ground", _gate(config), result, "fig1_iterated")
    result.tables["fig1_iterated"] = (PIP_HEADER, _pip_rows(curve))
    return result


def scenario_fig3(config) -> ScenarioResult:
    """Asymptotic dissipative curves for three environment preparations."""
    result = ScenarioResult()
    gate = _gate(config)
    for family in ("zurek_ground", "ghz_mixture", "env_maximally_mixed"):
        label = f"fig3_pip_{family}"
        curve = _evolved_pip(config, family, gate, result, label)
        result.tables[label] = (PIP_HEADER, _pip_rows(curve))
    return result


def scenario_fig4(config) -> ScenarioResult:
    """Terminal mutual information and system entropy vs dissipation strength,
    after a fixed number of iterations."""
    result = ScenarioResult()
    layout = RegisterLayout(1, config.n)
    digraph = uniform_digraph(layout)
    rho0 = initial_state("zurek_ground", layout, a=math.sqrt(config.a2),
                         b=math.sqrt(1.0 - config.a2))
    h_class = _h_class_from_a2(config.a2)
    alphas = [(i + 1) * (math.pi / 2) / ALPHA_SWEEP_POINTS
              for i in range(ALPHA_SWEEP_POINTS)]

    def point(alpha: float) -> tuple:
        gate = _gate(config, alpha1=alpha, alpha2=alpha)
        state = run_fixed(rho0, gate, digraph, config.max_n)
        rep = mutual_information(state, config.n, h_class=h_class)
        return (alpha, rep.ratio, rep.h_s)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(point, alphas))
    else:
        rows = [point(alpha) for alpha in alphas]
    result.convergence.append({"curve": "fig4_alpha_sweep", "iterations": config.max_n,
                               "converged": None, "final_distance": None})
    result.tables["fig4_alpha_sweep"] = (SWEEP_HEADER, rows)
    return result


def scenario_fig5(config) -> ScenarioResult:
    """Decay of the standard-vs-reversed operator-order difference with N."""
    result = ScenarioResult()
    layout = RegisterLayout(1, config.n)
    digraph = uniform_digraph(layout)
    rho0 = initial_state("zurek_ground", layout, a=math.sqrt(config.a2),
                         b=math.sqrt(1.0 - config.a2))
    h_class = _h_class_from_a2(config.a2)
    u_std = total_unitary(_gate(config))
    u_rev = total_unitary(_gate(config, order=ORDER_REVERSED))
    state_std, state_rev = rho0, rho0
    done = 0
    rows = []
    for n_target in ORDER_DIFF_SCHEDULE:
        for _ in range(n_target - done):
            state_std = step(state_std, u_std, digraph)
            state_rev = step(state_rev, u_rev, digraph)
        done = n_target
        curve_std = pip(state_std, h_class=h_class, threads=config.threads)
        curve_rev = pip(state_rev, h_class=h_class, threads=config.threads)
        diff = max(abs(a.mi - b.mi) for a, b in zip(curve_std.points, curve_rev.points))
        rows.append((n_target, diff / h_class))
    result.convergence.append({"curve": "fig5_order_diff", "iterations": done,
                               "converged": None, "final_distance": None})
    result.tables["fig5_order_diff"] = (DIFF_HEADER, rows)
    return result


def scenario_fig6(config) -> ScenarioResult:
    """Partial-information curves for uniform 2- and 3-qubit systems over a
    ground environment, after a fixed number of iterations."""
    result = ScenarioResult()
    gate = _gate(config)
    for k in (2, 3):
        label = f"fig6_pip_k{k}"
        curve = _evolved_pip(config, "k_uniform_pure", gate, result, label,
                             k=k, fixed_n=config.max_n)
        result.tables[label] = (PIP_HEADER, _pip_rows(curve))
    return result


def scenario_table1(config) -> ScenarioResult:
    """Terminal mutual-information ratio vs environment size, from the
    closed-form stationary state and (up to ``iterate_max_n``) from the
    iterated channel."""
    result = ScenarioResult()
    gate = _gate(config)
    h_class = _h_class_from_a2(config.a2)
    rows = []
    for n in range(2, 11):
        closed = closed_form_stationary("zurek_ground", n=n, a2=config.a2).state
        mi_closed = mutual_information(closed, n, h_class=h_class).ratio
        mi_iter: float | str = ""
        if n <= config.iterate_max_n:
            layout = RegisterLayout(1, n)
            rho0 = initial_state("zurek_ground", layout, a=math.sqrt(config.a2),
                                 b=math.sqrt(1.0 - config.a2))
            report = iterate(rho0, gate, uniform_digraph(layout),
                             max_n=min(config.max_n, 500), epsilon=config.epsilon,
                             checkpoint_stride=config.checkpoint_stride)
            mi_iter = mutual_information(report.state, n, h_class=h_class).ratio
            result.convergence.append(
                {"curve": f"table1_n{n}", "iterations": report.iterations,
                 "converged": report.converged,
                 "final_distance": report.checkpoints[-1][1]})
        rows.append((n, mi_closed, mi_iter))
    result.tables["table1"] = (TABLE1_HEADER, rows)
    return result


def scenario_attractor_report(config) -> ScenarioResult:
    """Candidate-eigenvalue scan: attractor dimension and basis per lambda."""
    result = ScenarioResult()
    gate = _gate(config)
    layout = RegisterLayout(config.k, config.n)
    digraph = uniform_digraph(layout)
    rows = []
    bases = {}
    for lam in candidate_eigenvalues(gate):
        dimension, basis = solve_attractors(gate, digraph, lam)
        rows.append((lam.real, lam.imag, dimension))
        if dimension:
            key = f"{lam.real:.12g}{lam.imag:+.12g}j"
            bases[key] = [[[z.real, z.imag] for z in mat.ravel()] for mat in basis]
    result.tables["attractor_dimensions"] = (ATTRACTOR_HEADER, rows)
    result.extra["attractor_bases"] = bases
    result.extra["register"] = {"k": config.k, "n": config.n}
    return result


SCENARIOS: dict[str, Callable] = {
    "fig1_zurek": scenario_fig1_zurek,
    "fig3_dissipative_pips": scenario_fig3,
    "fig4_alpha_sweep": scenario_fig4,
    "fig5_order_diff": scenario_fig5,
    "fig6_kqubit": scenario_fig6,
    "table1": scenario_table1,
    "attractor_report": scenario_attractor_report,
}


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def _write_csv(path: Path, header: tuple[str, ...], rows: list[tuple]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_format_cell(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def run_scenario(config) -> RunManifest:
    """Execute a validated config: compute, write output files, and return the
    manifest (also written as ``manifest.json`` in the output directory)."""
    if config.scenario not in SCENARIOS:
        raise ConfigInvalid(
            f"unknown scenario {config.scenario!r}; catalog: {sorted(SCENARIOS)}")
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    result = SCENARIOS[config.scenario](config)
    wall = time.perf_counter() - start

    outputs: dict[str, str] = {}
    if config.format == "csv":
        for name, (header, rows) in result.tables.items():
            path = out_dir / f"{name}.csv"
            _write_csv(path, header, rows)
            outputs[path.name] = _digest(path)
    else:
        payload = {
            "scenario": config.scenario,
            "config": config.to_dict(),
            "version": __version__,
            "kernel_backend": backend_name(),
            "tables": {name: {"header": list(header), "rows": [list(r) for r in rows]}
                       for name, (header, rows) in result.tables.items()},
            "convergence": result.convergence,
            "extra": result.extra,
        }
        path = out_dir / f"{config.scenario}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        outputs[path.name] = _digest(path)

    manifest = RunManifest(
        scenario=config.scenario,
        config=config.to_dict(),
        version=__version__,
        kernel_backend=backend_name(),
        wall_time_s=round(wall, 3),
        convergence=tuple(result.convergence),
        outputs=outputs,
    )
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return manifest
