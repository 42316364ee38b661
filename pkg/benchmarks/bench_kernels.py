"""Timing comparison of the compiled and NumPy two-qubit kernels.

Runs the dense conjugation kernel on random states across register sizes and
reports per-call times for both backends, plus one averaged channel step at
the largest size.  Usage: python benchmarks/bench_kernels.py [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np
import scipy.linalg

from qdarwin import GateSpec, RegisterLayout, initial_state, total_unitary, uniform_digraph
from qdarwin import _kernels_py
from qdarwin.channel import step

try:
    from qdarwin import _kernels as _compiled
except ImportError:
    _compiled = None


def random_state(m: int, rng) -> np.ndarray:
    d = 1 << m
    h = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = h @ h.conj().T
    return rho / rho.trace()


def best_of(func, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--max-qubits", type=int, default=12)
    args = parser.parse_args()

    rng = np.random.default_rng(1)
    gh = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    gate = scipy.linalg.expm(1j * (gh + gh.conj().T))

    print(f"two-qubit conjugation kernel, best of {args.repeats}")
    print(f"{'m':>3} {'dim':>5} {'numpy':>12} {'compiled':>12} {'speedup':>8}")
    for m in range(6, args.max_qubits + 1):
        rho = random_state(m, rng)
        t_py = best_of(lambda: _kernels_py.apply_two_qubit_matrix(rho, gate, 0, m - 1, m),
                       args.repeats)
        if _compiled is None:
            print(f"{m:>3} {1 << m:>5} {t_py * 1e3:>10.2f}ms {'(not built)':>12}")
            continue
        t_cy = best_of(lambda: _compiled.apply_two_qubit_matrix(rho, gate, 0, m - 1, m),
                       args.repeats)
        err = np.abs(_kernels_py.apply_two_qubit_matrix(rho, gate, 0, m - 1, m)
                     - _compiled.apply_two_qubit_matrix(rho, gate, 0, m - 1, m)).max()
        assert err < 1e-12, f"backend mismatch {err:.2e}"
        print(f"{m:>3} {1 << m:>5} {t_py * 1e3:>10.2f}ms {t_cy * 1e3:>10.2f}ms "
              f"{t_py / t_cy:>7.2f}x")

    m = min(args.max_qubits, 10)
    layout = RegisterLayout(1, m - 1)
    digraph = uniform_digraph(layout)
    rho0 = initial_state("zurek_ground", layout)
    spec = GateSpec(alpha1=np.pi / 2, alpha2=np.pi / 2)
    u = total_unitary(spec)
    t_step = best_of(lambda: step(rho0, u, digraph), args.repeats)
    print(f"\naveraged channel step at k=1, n={m - 1} ({layout.n} edges): "
          f"{t_step * 1e3:.2f} ms (active backend)")


if __name__ == "__main__":
    main()
