import numpy as np
import pytest

from qdarwin import (
    GateSpec,
    ORDER_REVERSED,
    RegisterLayout,
    asymptotic_state,
    candidate_eigenvalues,
    closed_form_attractor,
    closed_form_stationary,
    initial_state,
    iterate,
    kernels,
    solve_attractor_space,
    solve_attractors,
    total_unitary,
    trace_distance,
    uniform_digraph,
)
from qdarwin.errors import BadLambda, BadParams, NotSolved, TooLarge, UnknownFamily

PI = np.pi
SYM = GateSpec(alpha1=PI / 2, alpha2=PI / 2)
ASYM = GateSpec(alpha1=2 * PI / 3, alpha2=PI / 3)


def _has(values, target, tol=1e-9):
    return any(abs(v - target) <= tol for v in values)


def _projector(basis):
    vecs = [b.ravel() for b in basis]
    dim = vecs[0].size
    proj = np.zeros((dim, dim), complex)
    for v in vecs:
        proj += np.outer(v, v.conj())
    return proj


def test_candidates_pure_decoherence():
    vals = candidate_eigenvalues(GateSpec())
    assert len(vals) == 2 and _has(vals, 1.0) and _has(vals, -1.0)


def test_candidates_dephasing():
    vals = candidate_eigenvalues(GateSpec(gamma=PI))
    assert len(vals) == 4
    for target in (1.0, -1.0, 1j, -1j):
        assert _has(vals, target)


def test_candidates_identity_gate():
    vals = candidate_eigenvalues(np.eye(4))
    assert len(vals) == 1 and _has(vals, 1.0)


def test_solver_guards():
    dg = uniform_digraph(RegisterLayout(1, 2))
    with pytest.raises(BadLambda):
        solve_attractors(SYM, dg, 0.5)
    with pytest.raises(TooLarge):
        solve_attractors(SYM, uniform_digraph(RegisterLayout(1, 6)), 1.0)


def test_symmetric_fixed_sector_matches_printed_basis():
    lay = RegisterLayout(1, 2)
    dg = uniform_digraph(lay)
    dim, basis = solve_attractors(SYM, dg, 1.0)
    assert dim == 2 and len(basis) == 2
    d = lay.dim
    p0 = np.zeros((d, d), complex)
    p0[0, 0] = 1.0
    printed = [p0, (np.eye(d) - p0) / np.sqrt(d - 1.0)]
    # same span and, thanks to the canonical seeding, the same matrices
    assert np.linalg.norm(_projector(basis) - _projector(printed)) < 1e-8
    assert np.abs(basis[0] - p0).max() < 1e-8
    assert np.abs(basis[1] - printed[1]).max() < 1e-8


def test_symmetric_other_sectors_empty():
    for alpha in (PI / 6, PI / 3, PI / 2):
        spec = GateSpec(alpha1=alpha, alpha2=alpha)
        dg = uniform_digraph(RegisterLayout(1, 2))
        for lam in candidate_eigenvalues(spec):
            if abs(lam - 1.0) <= 1e-9:
                continue
            dim, basis = solve_attractors(spec, dg, lam)
            assert dim == 0 and basis == []


def test_asymmetric_sector_is_identity_only():
    for n in (2, 3):
        dg = uniform_digraph(RegisterLayout(1, n))
        dim, basis = solve_attractors(ASYM, dg, 1.0)
        d = 1 << (n + 1)
        assert dim == 1
        assert np.abs(basis[0] - np.eye(d) / np.sqrt(d)).max() < 1e-8


def test_attractor_residuals_for_solved_sectors():
    lay = RegisterLayout(1, 2)
    dg = uniform_digraph(lay)
    for spec in (SYM, ASYM, GateSpec(gamma=PI)):
        u = total_unitary(spec)
        edges = [kernels.embed_two_qubit(u, qi, qj, lay.m) for qi, qj in dg.qubit_pairs()]
        space = solve_attractor_space(spec, dg)
        for sector in space.sectors:
            for x in sector.basis:
                for ue in edges:
                    res = ue @ x @ ue.conj().T - sector.eigenvalue * x
                    assert np.linalg.norm(res) < 1e-8


def test_sector_dimensions_order_independent():
    for spec_std, n in ((SYM, 2), (ASYM, 2)):
        kw = dict(alpha1=spec_std.alpha1, alpha2=spec_std.alpha2, gamma=spec_std.gamma)
        spec_rev = GateSpec(order=ORDER_REVERSED, **kw)
        dg = uniform_digraph(RegisterLayout(1, n))
        std = solve_attractor_space(spec_std, dg)
        rev = solve_attractor_space(spec_rev, dg)
        std_dims = {complex(np.round(s.eigenvalue, 9)): s.dimension for s in std.sectors}
        rev_dims = {complex(np.round(s.eigenvalue, 9)): s.dimension for s in rev.sectors}
        assert std_dims == rev_dims


def test_dephasing_sectors_computed_structure():
    # gamma = pi splits every joint eigenspace of the edge unitaries, leaving
    # 2^(n+1) one-dimensional attractors per quarter-turn eigenvalue
    for n in (1, 2):
        lay = RegisterLayout(1, n)
        dg = uniform_digraph(lay)
        deph = solve_attractor_space(GateSpec(gamma=PI), dg)
        for lam in (1.0, -1.0, 1j, -1j):
            assert deph.dimension(lam) == 2 ** (n + 1)


def test_dephasing_curves_match_pure_decoherence():
    # the dephasing attractor structure differs from the pure-decoherence one,
    # but the information curves of the evolved ground-environment input
    # coincide at every step count
    from qdarwin import pip, run_fixed

    lay = RegisterLayout(1, 3)
    dg = uniform_digraph(lay)
    rho0 = initial_state("zurek_ground", lay)
    for count in (51, 52, 120):
        with_phase = run_fixed(rho0, GateSpec(gamma=PI), dg, count)
        without = run_fixed(rho0, GateSpec(), dg, count)
        delta = pip(with_phase, h_class=1.0).ratios() - pip(without, h_class=1.0).ratios()
        assert np.abs(delta).max() < 1e-12


def test_asymptotic_state_fixed_point():
    lay = RegisterLayout(1, 2)
    dg = uniform_digraph(lay)
    space = solve_attractor_space(SYM, dg)
    mixed = closed_form_stationary("completely_mixed", k=1, n=2).state
    out = asymptotic_state(mixed, space)
    assert trace_distance(out.state, mixed) < 1e-12


def test_asymptotic_state_excited_environment():
    lay = RegisterLayout(1, 2)
    dg = uniform_digraph(lay)
    space = solve_attractor_space(SYM, dg)
    rho = initial_state("env_excited", lay)
    out = asymptotic_state(rho, space)
    target = closed_form_stationary("env_excited", n=2).state
    assert trace_distance(out.state, target) < 1e-10
    assert all(w < 1e-12 for _, w in out.oscillatory)


def test_asymptotic_state_asymmetric_fully_mixes():
    lay = RegisterLayout(1, 3)
    dg = uniform_digraph(lay)
    space = solve_attractor_space(ASYM, dg)
    rho = initial_state("zurek_ground", lay)
    out = asymptotic_state(rho, space)
    target = closed_form_stationary("completely_mixed", k=1, n=3).state
    assert trace_distance(out.state, target) < 1e-10


def test_asymptotic_state_finite_power_tracks_parity():
    lay = RegisterLayout(1, 2)
    dg = uniform_digraph(lay)
    space = solve_attractor_space(GateSpec(), dg)  # pure decoherence, has lambda = -1
    rho = initial_state("zurek_ground", lay)
    even = asymptotic_state(rho, space, n=100).state
    odd = asymptotic_state(rho, space, n=101).state
    assert trace_distance(even, odd) > 1e-3
    assert trace_distance(even, asymptotic_state(rho, space, n=102).state) < 1e-12


def test_asymptotic_state_layout_guard():
    dg = uniform_digraph(RegisterLayout(1, 2))
    space = solve_attractor_space(SYM, dg)
    with pytest.raises(NotSolved):
        asymptotic_state(initial_state("zurek_ground", RegisterLayout(1, 3)), space)


def test_oracle_equivalence_projection_vs_iteration():
    families = ("zurek_ground", "env_excited", "ghz_mixture", "env_maximally_mixed")
    for n in (2, 3):
        lay = RegisterLayout(1, n)
        dg = uniform_digraph(lay)
        space = solve_attractor_space(SYM, dg)
        for family in families:
            rho = initial_state(family, lay)
            proj = asymptotic_state(rho, space).state
            rep = iterate(rho, SYM, dg, max_n=2000, epsilon=1e-10)
            assert trace_distance(proj, rep.state) < 1e-6, (family, n)


def test_closed_form_attractor_families():
    space = closed_form_attractor("symmetric_diss", 1, 1)
    sector = space.sector(1.0)
    assert sector.dimension == 2
    assert sector.basis[0].shape == (4, 4)
    p0 = np.zeros((4, 4), complex)
    p0[0, 0] = 1.0
    assert np.allclose(sector.basis[0], p0)
    assert np.allclose(sector.basis[1], (np.eye(4) - p0) / np.sqrt(3.0))

    single = closed_form_attractor("asymmetric_diss", 2, 3)
    assert single.dimension(1.0) == 1
    assert np.allclose(single.sector(1.0).basis[0], np.eye(32) * 2.0 ** -2.5)

    empty = closed_form_attractor("dephasing_zero", 1, 2)
    assert empty.dimension(1j) == 0 and empty.dimension(-1j) == 0

    with pytest.raises(UnknownFamily):
        closed_form_attractor("nope", 1, 1)


def test_closed_form_attractor_matches_solver():
    lay = RegisterLayout(1, 2)
    dg = uniform_digraph(lay)
    solved = solve_attractors(SYM, dg, 1.0)[1]
    printed = closed_form_attractor("symmetric_diss", 1, 2).sector(1.0).basis
    assert np.linalg.norm(_projector(solved) - _projector(list(printed))) < 1e-8


def test_closed_form_stationary_values():
    ground = closed_form_stationary("zurek_ground", n=2, a2=0.5).state
    p0 = np.zeros((8, 8), complex)
    p0[0, 0] = 1.0
    assert np.abs(ground.data - (np.eye(8) / 14.0 + (3.0 / 7.0) * p0)).max() < 1e-12

    kq = closed_form_stationary("kqubit_uniform", k=2, n=2, p0=0.25).state
    q0 = np.zeros((16, 16), complex)
    q0[0, 0] = 1.0
    expected = 0.25 * q0 + 0.75 * (np.eye(16) - q0) / 15.0
    assert np.abs(kq.data - expected).max() < 1e-12

    mixed = closed_form_stationary("completely_mixed", k=1, n=3).state
    assert np.allclose(mixed.data, np.eye(16) / 16.0)


def test_closed_form_stationary_errors():
    with pytest.raises(BadParams):
        closed_form_stationary("zurek_ground", n=2, a2=1.5)
    with pytest.raises(BadParams):
        closed_form_stationary("kqubit_uniform", k=2, n=2, p0=-0.1)
    with pytest.raises(UnknownFamily):
        closed_form_stationary("nope", n=2)
