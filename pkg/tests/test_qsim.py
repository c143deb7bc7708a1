import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermatzeta.characters import Character, gauss_sum, order_m_character
from fermatzeta.errors import AncillaTooLarge, BadTuple, DimensionMismatch, StateTooLarge
from fermatzeta.fermat import FermatSurface, fermat_roots, normalized_phase, valid_tuples
from fermatzeta.field import field_create
from fermatzeta.qsim import (
    StateVector,
    approx_count,
    circular_distance,
    estimate_phase,
    estimate_trace,
    exact_normalized_trace,
    make_chi_state,
    mul_gate,
    phase_estimation,
    qft_field,
    qpe_distribution,
    run_algorithm1,
    sample_phases,
    simulate_algorithm1,
)
from fermatzeta.varieties import count_points

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4),
                (17, 1), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6)]


def qft_matrix(F, inverse=False):
    cols = [qft_field(StateVector.basis((F.q,), (x,)), 0, F, inverse).amps for x in range(F.q)]
    return np.stack(cols, axis=1)


@pytest.mark.parametrize("p,r", SMALL_FIELDS)
def test_qft_unitary_and_kernel(p, r):
    F = field_create(p, r)
    M = qft_matrix(F)
    assert np.abs(M.conj().T @ M - np.eye(F.q)).max() < 1e-9
    # direct kernel w_p^Tr(xy) / sqrt(q)
    codes = np.arange(F.q)
    tr = np.array([F.trace_codes(F.mul(codes, x)) for x in codes])
    K = np.exp(2j * np.pi * tr / p) / np.sqrt(F.q)
    assert np.abs(M - K.T).max() < 1e-9
    assert np.abs(qft_matrix(F, inverse=True) @ M - np.eye(F.q)).max() < 1e-9


@pytest.mark.parametrize("p,r", SMALL_FIELDS)
def test_mul_gate_permutation(p, r):
    F = field_create(p, r)
    for b in (0, 1, 2, F.q - 2):
        idx = []
        for x in range(F.q):
            for y in range(F.q):
                out = mul_gate(StateVector.basis((F.q, F.q), (x, y)), 0, 1, b, F).amps
                hit = np.argwhere(np.abs(out) > 0.5)
                assert len(hit) == 1 and np.isclose(np.abs(out).sum(), 1)
                xo, yo = hit[0]
                assert xo == x
                if x == 0 or y == 0:
                    assert yo == y
                else:
                    assert F.element(int(yo)) * F.element(x) ** b == F.element(y)
                idx.append(xo * F.q + yo)
        assert sorted(idx) == list(range(F.q * F.q))


def test_mul_gate_examples():
    F = field_create(5)
    out = mul_gate(StateVector.basis((5, 5), (2, 3)), 0, 1, 1, F)
    assert abs(out.amps[2, 4] - 1) < 1e-12
    s = StateVector.basis((5, 5), (3, 2))
    assert np.array_equal(mul_gate(s, 0, 1, 0, F).amps, s.amps)
    with pytest.raises(DimensionMismatch):
        mul_gate(StateVector.basis((5, 7), (1, 1)), 0, 1, 1, F)
    with pytest.raises(DimensionMismatch):
        qft_field(StateVector.basis((7,), (0,)), 0, F)


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (2, 3), (3, 2)])
def test_mul_gate_on_chi_states(p, r):
    F = field_create(p, r)
    n1 = F.q - 1
    for beta in range(n1):
        for gamma in range(n1):
            for a in (1, 2):
                st_in = make_chi_state(beta, F).tensor(make_chi_state(gamma, F))
                want = make_chi_state(beta + a * gamma, F).tensor(make_chi_state(gamma, F))
                got = mul_gate(st_in, 0, 1, a, F)
                assert abs(abs(want.inner(got)) - 1) < 1e-9


def test_qft_examples_f5():
    F = field_create(5)
    out = qft_field(StateVector.basis((5,), (0,)), 0, F)
    assert np.allclose(out.amps, np.full(5, 1 / np.sqrt(5)))
    for a in range(1, 4):
        chi = Character(a, F)
        got = qft_field(make_chi_state(a, F), 0, F)
        want = gauss_sum(chi) / np.sqrt(5) * make_chi_state(-a, F).amps
        assert np.abs(got.amps - want).max() < 1e-9


@pytest.mark.parametrize("p,r", SMALL_FIELDS)
def test_chi_states(p, r):
    F = field_create(p, r)
    states = np.stack([make_chi_state(a, F).amps for a in range(F.q - 1)])
    assert np.all(states[:, 0] == 0)
    G = states.conj() @ states.T
    assert np.abs(G - np.eye(F.q - 1)).max() < 1e-9
    uniform = np.r_[0, np.full(F.q - 1, 1 / np.sqrt(F.q - 1))]
    assert np.allclose(states[0], uniform)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(5, 1), (2, 3), (3, 2), (7, 1)]), st.integers(0, 2**32 - 1), st.integers(0, 6))
def test_gates_preserve_norm(field, seed, b):
    F = field_create(*field)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(F.q, F.q)) + 1j * rng.normal(size=(F.q, F.q))
    s = StateVector((F.q, F.q), v / np.linalg.norm(v))
    for op in (lambda x: qft_field(x, 0, F), lambda x: qft_field(x, 1, F, True), lambda x: mul_gate(x, 1, 0, b, F)):
        s = op(s)
        assert abs(s.norm() - 1) < 1e-9


SURFACES = [
    FermatSurface.over(7, 2, (-1, 1, 1, 1)),
    FermatSurface.over(7, 3, (1, 1, 1)),
    FermatSurface.over(5, 4, (1, 1, 1)),
    FermatSurface.over(13, 3, (1, 1, 1)),
    FermatSurface.over(13, 4, (2, 5, 7)),
    FermatSurface.over(7, 3, (3, 1, 5, 2)),
    FermatSurface(field_create(3, 2), 4, tuple(field_create(3, 2).gen ** k for k in (1, 2, 5))),
]


@pytest.mark.parametrize("surface", SURFACES, ids=lambda s: f"q{s.q}m{s.m}n{s.n}")
def test_circuit_matches_gauss_sums(surface):
    prof = fermat_roots(surface)
    scale = np.sqrt(float(surface.q) ** (surface.n - 1))
    for b, alpha in zip(valid_tuples(surface.m, surface.n), prof.roots):
        run = simulate_algorithm1(surface, b)
        assert run.overlap > 1 - 1e-9
        assert abs(run.final.norm() - 1) < 1e-9
        ph = run_algorithm1(surface, b)
        assert abs(abs(ph) - 1) < 1e-9
        assert circular_distance(np.angle(ph), np.angle(normalized_phase(surface, b))) < 1e-6
        assert circular_distance(np.angle(ph), np.angle(scale / alpha)) < 1e-6


def test_quadric_phase_is_minus_one():
    assert abs(run_algorithm1(SURFACES[0], (1, 1, 1, 1)) + 1) < 1e-9


def test_bad_tuples():
    s = SURFACES[1]
    for b in [(1, 1), (0, 1, 2), (1, 1, 2), (3, 1, 2)]:
        with pytest.raises(BadTuple):
            run_algorithm1(s, b)


def phase_unitary(theta):
    def apply_u(arr, a0, a1):
        return arr * np.exp(1j * theta)

    return apply_u


def test_qpe_exact_grid_phase():
    F = field_create(5)
    eig = make_chi_state(0, F).tensor(make_chi_state(1, F))
    for k in (0, 3, 17):
        est = estimate_phase(phase_unitary(2 * np.pi * k / 64), eig, 6, shots=20, seed=1, keep_distribution=True)
        assert est.theta_hat == pytest.approx(2 * np.pi * k / 64)
        assert est.distribution[k] == pytest.approx(1)


def test_qpe_quadric():
    est = phase_estimation(SURFACES[0], (1, 1, 1, 1), 8, shots=50, seed=3)
    assert circular_distance(est.theta_hat, np.pi) < 2 * np.pi / 256
    assert est.grid == pytest.approx(2 * np.pi / 256)
    assert phase_estimation(SURFACES[0], (1, 1, 1, 1), 9).grid == pytest.approx(est.grid / 2)


def test_qpe_off_grid_resolution():
    F = field_create(5)
    eig = make_chi_state(0, F).tensor(make_chi_state(1, F))
    theta = 1.2345
    widths = []
    for t in (5, 6, 7, 8):
        probs = qpe_distribution(phase_unitary(theta), eig, t)
        assert sum(probs[k] for k in range(2**t) if circular_distance(2 * np.pi * k / 2**t, theta) < 2 * np.pi / 2**t) >= 4 / np.pi**2
        widths.append(2 * np.pi / 2**t)
    assert all(np.isclose(a / b, 2) for a, b in zip(widths, widths[1:]))


def test_qpe_fast_path_agrees():
    s = SURFACES[2]
    b = valid_tuples(4, 2)[0]
    slow = phase_estimation(s, b, 7, shots=30, seed=5, keep_distribution=True)
    fast = phase_estimation(s, b, 7, shots=30, seed=5, keep_distribution=True, exact_power_limit=4)
    assert np.abs(slow.distribution - fast.distribution).max() < 1e-9
    assert slow.outcomes == fast.outcomes


def test_qpe_guards():
    with pytest.raises(AncillaTooLarge):
        phase_estimation(SURFACES[0], (1, 1, 1, 1), 17)
    F = field_create(2, 6)
    eig = make_chi_state(0, F).tensor(make_chi_state(1, F))
    with pytest.raises(StateTooLarge):
        estimate_phase(phase_unitary(0.1), eig, 13)
    with pytest.raises(StateTooLarge):
        StateVector.basis((2,) * 25, (0,) * 25)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_seed_determinism(seed):
    a = sample_phases(SURFACES[2], samples=4, t_bits=5, seed=seed, shots=7)
    b = sample_phases(SURFACES[2], samples=4, t_bits=5, seed=seed, shots=7)
    assert a == b
    e1 = phase_estimation(SURFACES[1], valid_tuples(3, 2)[0], 5, shots=9, seed=seed)
    e2 = phase_estimation(SURFACES[1], valid_tuples(3, 2)[0], 5, shots=9, seed=seed)
    assert e1 == e2


def test_estimate_trace_examples():
    assert estimate_trace(SURFACES[0], samples=3, t_bits=8) == pytest.approx(-1)
    tr = estimate_trace(SURFACES[2], t_bits=8, exhaustive=True, exact_power_limit=8)
    assert abs(tr - 1 / np.sqrt(5)) < 2 * np.pi / 256
    assert exact_normalized_trace(SURFACES[2]) == pytest.approx(1 / np.sqrt(5))


def test_trace_sampling_converges():
    s = SURFACES[3]
    phases = np.array([normalized_phase(s, b) for b in valid_tuples(s.m, s.n)])
    rng = np.random.default_rng(0)
    draws = phases[rng.integers(0, len(phases), size=4000)]
    sigma = np.std(phases.real) / np.sqrt(len(draws))
    assert abs(draws.mean().real - exact_normalized_trace(s).real) < 3 * sigma + 1e-12


@pytest.mark.parametrize("surface", SURFACES[:4], ids=lambda s: f"q{s.q}m{s.m}n{s.n}")
def test_approx_count_exhaustive(surface):
    exact = count_points(surface.to_poly_system(), 1)
    est = approx_count(surface, s=1, t_bits=10, exhaustive=True, exact_power_limit=16)
    assert abs(est.raw - exact) <= est.error_bar
    assert est.estimate == exact


def test_approx_count_quartic_t12():
    est = approx_count(SURFACES[2], t_bits=12, exhaustive=True, exact_power_limit=16)
    assert abs(est.raw) <= est.error_bar and est.estimate == 0


def test_approx_count_sampled_has_wider_bar():
    s = SURFACES[3]
    exact = count_points(s.to_poly_system(), 1)
    est = approx_count(s, samples=64, t_bits=8, seed=2, exact_power_limit=8)
    assert not est.exhaustive
    assert est.epsilon > 2 * np.pi / 256
    assert abs(est.raw - exact) <= est.error_bar


def test_approx_count_second_extension():
    s = SURFACES[1]
    exact = count_points(s.to_poly_system(), 2)
    est = approx_count(s, s=2, t_bits=10, exhaustive=True, exact_power_limit=16)
    assert abs(est.raw - exact) <= est.error_bar
