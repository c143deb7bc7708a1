"""Statevector simulation of the Fermat-hypersurface circuit.

Registers are tensor axes: field registers have dimension q (basis states
indexed by field codes) and ancilla qubits dimension 2.  Gates act on numpy
arrays through an axis argument so the same code drives both whole states and
the controlled slices used in phase estimation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .characters import Character, order_m_character
from .errors import AncillaTooLarge, BadTuple, DimensionMismatch, StateTooLarge
from .fermat import FermatSurface, normalized_phase, plane_count, valid_tuples
from .field import FieldCtx

MAX_AMPLITUDES = 2**24
MAX_T_BITS = 16
NORM_TOL = 1e-9


@dataclass
class StateVector:
    """Amplitudes over a tensor product of registers, stored with shape ``dims``."""

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        size = int(np.prod(self.dims))
        if size > MAX_AMPLITUDES:
            raise StateTooLarge(size, MAX_AMPLITUDES)
        self.amps = np.asarray(self.amps, dtype=complex).reshape(self.dims)

    @classmethod
    def basis(cls, dims: Sequence[int], index: Sequence[int]) -> "StateVector":
        size = int(np.prod(dims))
        if size > MAX_AMPLITUDES:
            raise StateTooLarge(size, MAX_AMPLITUDES)
        amps = np.zeros(tuple(dims), dtype=complex)
        amps[tuple(index)] = 1.0
        return cls(tuple(dims), amps)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amps, other.amps))

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(self.dims + other.dims, np.multiply.outer(self.amps, other.amps))

    def copy(self) -> "StateVector":
        return StateVector(self.dims, self.amps.copy())

    def to_json(self) -> list[list[float]]:
        flat = self.amps.reshape(-1)
        return [[float(z.real), float(z.imag)] for z in flat]


def _check_field_axis(state: StateVector, reg: int, ctx: FieldCtx):
    if not 0 <= reg < len(state.dims):
        raise DimensionMismatch(f"no register {reg} in a {len(state.dims)}-register state")
    if state.dims[reg] != ctx.q:
        raise DimensionMismatch(f"register {reg} has dimension {state.dims[reg]}, field has {ctx.q}")


# ---------------------------------------------------------------------------
# array-level gates

@lru_cache(maxsize=None)
def _trace_form_perm(ctx: FieldCtx) -> np.ndarray:
    """Code map x -> B x where B_ij = Tr(t^(i+j)), so Tr(x y) = (B x) . y."""
    p, r = ctx.p, ctx.r
    basis = [ctx.element(p**i) for i in range(r)]
    B = np.array([[(bi * bj).trace() for bj in basis] for bi in basis], dtype=np.int64)
    digs = ctx.digits(np.arange(ctx.q))
    out = ctx.from_digits((digs @ B.T) % p)
    out.setflags(write=False)
    return out


def qft_axis(arr: np.ndarray, axis: int, ctx: FieldCtx, inverse: bool = False) -> np.ndarray:
    """|x> -> q^(-1/2) sum_y w_p^Tr(xy) |y> along one axis.

    Tr(xy) is the dot product of the coordinates of y with those of B x, so
    the transform is the permutation x -> B x followed by a Z/p Fourier
    transform on each coordinate.  The inverse runs the conjugate transforms
    and then the inverse permutation.
    """
    p, r = ctx.p, ctx.r
    perm = _trace_form_perm(ctx)
    arr = np.moveaxis(arr, axis, 0)
    rest = arr.shape[1:]
    if not inverse:
        moved = np.empty_like(arr)
        moved[perm] = arr
    else:
        moved = arr
    # digit i of a code lives on axis (r - 1 - i) after a C-order reshape
    t = moved.reshape((p,) * r + rest)
    dft = np.exp((-2j if inverse else 2j) * np.pi * np.outer(np.arange(p), np.arange(p)) / p) / np.sqrt(p)
    for ax in range(r):
        t = np.moveaxis(np.tensordot(dft, t, axes=([1], [ax])), 0, ax)
    out = t.reshape((ctx.q,) + rest)
    if inverse:
        out = out[perm]
    return np.moveaxis(out, 0, axis)


def mul_axes(arr: np.ndarray, src: int, dst: int, b: int, ctx: FieldCtx) -> np.ndarray:
    """|x, y> -> |x, y / x^b> for x, y != 0; identity when x = 0 or y = 0."""
    if src == dst:
        raise DimensionMismatch("source and target register must differ")
    b %= ctx.q - 1
    if b == 0:
        return arr
    arr = np.moveaxis(arr, (src, dst), (0, 1))
    out = arr.copy()
    n1 = ctx.q - 1
    ys = np.arange(1, ctx.q)
    ly = ctx.log_table[ys]
    for x in range(1, ctx.q):
        lx = int(ctx.log_table[x])
        targets = ctx.exp_table[(ly - b * lx) % n1]
        out[x, targets] = arr[x, ys]
    return np.moveaxis(out, (0, 1), (src, dst))


def scale_axis(arr: np.ndarray, axis: int, c: int, ctx: FieldCtx) -> np.ndarray:
    """|y> -> |y c> for a nonzero field code c (permutation fixing 0)."""
    if c == 0:
        raise ValueError("multiplication by zero is not reversible")
    arr = np.moveaxis(arr, axis, 0)
    out = np.empty_like(arr)
    out[ctx.mul(np.arange(ctx.q), c)] = arr
    return np.moveaxis(out, 0, axis)


# ---------------------------------------------------------------------------
# state-level operations

def qft_field(state: StateVector, reg: int, ctx: FieldCtx, inverse: bool = False) -> StateVector:
    _check_field_axis(state, reg, ctx)
    return StateVector(state.dims, qft_axis(state.amps, reg, ctx, inverse))


def mul_gate(state: StateVector, src: int, dst: int, b: int, ctx: FieldCtx) -> StateVector:
    _check_field_axis(state, src, ctx)
    _check_field_axis(state, dst, ctx)
    return StateVector(state.dims, mul_axes(state.amps, src, dst, b, ctx))


def make_chi_state(alpha: int, ctx: FieldCtx) -> StateVector:
    """|chi^alpha> = (q-1)^(-1/2) sum_x chi^alpha(x) |x>."""
    return StateVector((ctx.q,), Character(alpha, ctx).values() / np.sqrt(ctx.q - 1))


# ---------------------------------------------------------------------------
# the circuit

def _check_tuple(surface: FermatSurface, b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(int(x) for x in b)
    if len(b) != surface.n + 1:
        raise BadTuple(f"need {surface.n + 1} entries, got {len(b)}")
    if any(not 1 <= x < surface.m for x in b):
        raise BadTuple(f"entries must lie in 1..{surface.m - 1}: {b}")
    if sum(b) % surface.m:
        raise BadTuple(f"entries must sum to 0 mod {surface.m}: {b}")
    return b


def initial_chi_registers(surface: FermatSurface) -> StateVector:
    """|chi^0> (x) |chi~> on two field registers."""
    ctx = surface.ctx
    tilde = order_m_character(ctx, surface.m)
    return make_chi_state(0, ctx).tensor(make_chi_state(tilde.alpha, ctx))


def apply_circuit(arr: np.ndarray, surface: FermatSurface, b: Sequence[int], x_axis: int, y_axis: int) -> np.ndarray:
    """The gate sequence of the algorithm on the two chi-register axes.

    For each i: |x,y> -> |x, y/x^b_i>, QFT on x, |x,y> -> |x, y/x^b_i>.
    Then |y> -> |y c_i^b_i> for each i, and finally the sign (-1)^(n-1).
    """
    ctx = surface.ctx
    for bi in b:
        arr = mul_axes(arr, x_axis, y_axis, bi, ctx)
        arr = qft_axis(arr, x_axis, ctx)
        arr = mul_axes(arr, x_axis, y_axis, bi, ctx)
    for bi, ci in zip(b, surface.coeffs):
        arr = scale_axis(arr, y_axis, (ci**bi).code, ctx)
    if surface.n % 2 == 0:
        arr = -arr
    return arr


@dataclass(frozen=True)
class CircuitRun:
    phase: complex
    overlap: float  # |<initial|final>|
    final: StateVector = field(repr=False)


def simulate_algorithm1(surface: FermatSurface, b: Sequence[int]) -> CircuitRun:
    b = _check_tuple(surface, b)
    init = initial_chi_registers(surface)
    final = StateVector(init.dims, apply_circuit(init.amps, surface, b, 0, 1))
    ov = init.inner(final)
    return CircuitRun(phase=ov, overlap=abs(ov), final=final)


def run_algorithm1(surface: FermatSurface, b: Sequence[int]) -> complex:
    """Global phase e^(i theta) picked up by the chi registers.

    Raises if the final state is not (up to the phase) the initial one.
    """
    run = simulate_algorithm1(surface, b)
    if run.overlap < 1 - NORM_TOL:
        raise ArithmeticError(f"chi registers left the eigenspace: overlap {run.overlap}")
    return run.phase / run.overlap


# ---------------------------------------------------------------------------
# phase estimation

@dataclass(frozen=True)
class PhaseEstimate:
    theta_hat: float  # modal estimate, in [0, 2 pi)
    t_bits: int
    samples: int
    seed: int
    outcomes: tuple[int, ...] = ()
    distribution: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def grid(self) -> float:
        return 2 * np.pi / 2**self.t_bits

    def shot_phases(self) -> np.ndarray:
        return 2 * np.pi * np.asarray(self.outcomes) / 2**self.t_bits


def circular_distance(a: float, b: float) -> float:
    d = (a - b) % (2 * np.pi)
    return float(min(d, 2 * np.pi - d))


def qpe_distribution(
    apply_u: Callable[[np.ndarray, int, int], np.ndarray],
    eigenstate: StateVector,
    t_bits: int,
    fast_phase: complex | None = None,
    exact_power_limit: int | None = None,
) -> np.ndarray:
    """Outcome probabilities of textbook phase estimation.

    ``apply_u(arr, axis0, axis1)`` applies the unitary to the two target
    register axes of ``arr``.  Ancilla k (0 = most significant) controls
    U^(2^(t-1-k)), realized by applying ``apply_u`` that many times to the
    ancilla-|1> slice.  Powers above ``exact_power_limit`` instead multiply by
    ``fast_phase`` raised to the power; the exact powers are checked against
    the scalar phase before it is trusted.
    """
    if t_bits > MAX_T_BITS or t_bits < 1:
        raise AncillaTooLarge(f"t_bits must lie in 1..{MAX_T_BITS}, got {t_bits}")
    if len(eigenstate.dims) != 2:
        raise DimensionMismatch("phase estimation expects two target registers")
    dims = (2,) * t_bits + eigenstate.dims
    size = int(np.prod(dims))
    if size > MAX_AMPLITUDES:
        raise StateTooLarge(size, MAX_AMPLITUDES)
    plus = np.full((2,) * t_bits, 2 ** (-t_bits / 2), dtype=complex)
    arr = np.multiply.outer(plus, eigenstate.amps)
    ax0, ax1 = t_bits, t_bits + 1
    for k in range(t_bits):
        power = 2 ** (t_bits - 1 - k)
        sl = [slice(None)] * arr.ndim
        sl[k] = 1
        sl = tuple(sl)
        sub = arr[sl]
        # axes of the target registers after dropping ancilla k
        s0, s1 = ax0 - 1, ax1 - 1
        if exact_power_limit is None or power <= exact_power_limit:
            for _ in range(power):
                sub = apply_u(sub, s0, s1)
            if fast_phase is not None:
                ref = arr[sl] * fast_phase**power
                if not np.allclose(sub, ref, atol=1e-8):
                    raise ArithmeticError(f"U^{power} disagrees with the scalar phase")
        else:
            if fast_phase is None:
                raise ValueError("fast path needs the scalar phase")
            sub = sub * fast_phase**power
        arr[sl] = sub
    # inverse QFT over Z/2^t on the ancilla block; index j = sum a_k 2^(t-1-k)
    N = 2**t_bits
    flat = arr.reshape((N,) + eigenstate.dims)
    flat = np.fft.fft(flat, axis=0) / np.sqrt(N)
    probs = np.sum(np.abs(flat) ** 2, axis=(1, 2))
    total = probs.sum()
    if abs(total - 1) > NORM_TOL:
        raise ArithmeticError(f"phase estimation lost norm: {total}")
    return probs / total


def _sample(probs: np.ndarray, shots: int, seed: int) -> tuple[int, ...]:
    rng = np.random.default_rng(seed)
    return tuple(int(k) for k in rng.choice(len(probs), size=shots, p=probs))


def _modal(outcomes: Sequence[int]) -> int:
    values, counts = np.unique(np.asarray(outcomes), return_counts=True)
    return int(values[np.argmax(counts)])


def estimate_phase(
    apply_u: Callable[[np.ndarray, int, int], np.ndarray],
    eigenstate: StateVector,
    t_bits: int,
    shots: int = 1,
    seed: int = 0,
    keep_distribution: bool = False,
    fast_phase: complex | None = None,
    exact_power_limit: int | None = None,
) -> PhaseEstimate:
    """Sampled phase estimation for an arbitrary two-register unitary."""
    probs = qpe_distribution(apply_u, eigenstate, t_bits, fast_phase, exact_power_limit)
    outcomes = _sample(probs, shots, seed)
    k = _modal(outcomes)
    return PhaseEstimate(
        theta_hat=2 * np.pi * k / 2**t_bits,
        t_bits=t_bits,
        samples=shots,
        seed=seed,
        outcomes=outcomes,
        distribution=probs if keep_distribution else None,
    )


def phase_estimation(
    surface: FermatSurface,
    b: Sequence[int],
    t_bits: int,
    shots: int = 1,
    seed: int = 0,
    keep_distribution: bool = False,
    exact_power_limit: int | None = None,
) -> PhaseEstimate:
    """Estimate theta for the tuple b with t ancilla qubits.

    By default every controlled power is simulated gate by gate.  Setting
    ``exact_power_limit`` switches powers above it to the scalar phase measured
    from one exact application.
    """
    b = _check_tuple(surface, b)
    fast = None
    if exact_power_limit is not None:
        fast = run_algorithm1(surface, b)

    def apply_u(arr, a0, a1):
        return apply_circuit(arr, surface, b, a0, a1)

    return estimate_phase(
        apply_u,
        initial_chi_registers(surface),
        t_bits,
        shots=shots,
        seed=seed,
        keep_distribution=keep_distribution,
        fast_phase=fast,
        exact_power_limit=exact_power_limit,
    )


# ---------------------------------------------------------------------------
# trace estimation and approximate counting

@dataclass(frozen=True)
class TraceSamples:
    tuples: tuple[tuple[int, ...], ...]
    thetas: tuple[float, ...]
    exhaustive: bool
    t_bits: int
    dim: int

    def mean(self, s: int = 1) -> complex:
        return complex(np.mean(np.exp(1j * s * np.asarray(self.thetas))))


def sample_phases(
    surface: FermatSurface,
    samples: int = 16,
    t_bits: int = 8,
    seed: int = 0,
    exhaustive: bool = False,
    shots: int = 15,
    exact_power_limit: int | None = None,
) -> TraceSamples:
    """Run phase estimation on uniformly drawn tuples (or on all of them).

    Sample i uses seed + i for its measurement shots.
    """
    all_tuples = valid_tuples(surface.m, surface.n)
    if exhaustive:
        chosen = all_tuples
    else:
        rng = np.random.default_rng(seed)
        chosen = [all_tuples[k] for k in rng.integers(0, len(all_tuples), size=samples)]
    cache: dict[tuple[tuple[int, ...], int], float] = {}
    thetas = []
    for i, b in enumerate(chosen):
        key = (b, seed + i)
        if key not in cache:
            est = phase_estimation(surface, b, t_bits, shots=shots, seed=seed + i, exact_power_limit=exact_power_limit)
            cache[key] = est.theta_hat
        thetas.append(cache[key])
    return TraceSamples(tuple(chosen), tuple(thetas), exhaustive, t_bits, len(all_tuples))


def estimate_trace(
    surface: FermatSurface,
    samples: int = 16,
    t_bits: int = 8,
    seed: int = 0,
    exhaustive: bool = False,
    shots: int = 15,
    exact_power_limit: int | None = None,
) -> complex:
    """Empirical mean of e^(i theta_hat), an estimate of Tr(U_H)/dim(U_H)."""
    return sample_phases(surface, samples, t_bits, seed, exhaustive, shots, exact_power_limit).mean()


def exact_normalized_trace(surface: FermatSurface, s: int = 1) -> complex:
    phases = [normalized_phase(surface, b) for b in valid_tuples(surface.m, surface.n)]
    return complex(np.mean(np.asarray(phases) ** s))


@dataclass(frozen=True)
class CountEstimate:
    s: int
    estimate: int
    raw: float
    error_bar: float
    trace: complex  # estimate of Tr(U_H^s)/dim
    dim: int
    epsilon: float
    exhaustive: bool

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "N_s_estimate": self.estimate,
            "raw": self.raw,
            "error_bar": self.error_bar,
            "trace_re": self.trace.real,
            "trace_im": self.trace.imag,
            "dim": self.dim,
            "epsilon": self.epsilon,
            "exhaustive": self.exhaustive,
        }


def count_from_trace(surface: FermatSurface, s: int, trace: complex) -> float:
    """N_s from a normalized trace of U_H^s.

    The root multiset is closed under conjugation, so Tr(U_H^s) is real and
    only its real part is used.
    """
    n, q = surface.n, surface.q
    dim = len(valid_tuples(surface.m, n))
    scale = float(q) ** (s * (n - 1) / 2)
    return plane_count(n, q, s) - (-1) ** n * scale * dim * trace.real


def approx_count(
    surface: FermatSurface,
    s: int = 1,
    samples: int = 16,
    t_bits: int = 10,
    seed: int = 0,
    exhaustive: bool = False,
    shots: int = 15,
    exact_power_limit: int | None = None,
    phases: TraceSamples | None = None,
) -> CountEstimate:
    """Approximate N_s from phase-estimated eigenphases of U_H.

    The error bar is sqrt(q^(s(n-1))) * dim * eps with eps the sum of the
    phase-grid error s * 2 pi / 2^t (modal bin within one step of the true
    phase) and, when tuples are sampled, twice the standard error of the
    sampled mean.
    """
    if phases is None:
        phases = sample_phases(surface, samples, t_bits, seed, exhaustive, shots, exact_power_limit)
    trace = phases.mean(s)
    raw = count_from_trace(surface, s, trace)
    eps = s * 2 * np.pi / 2**phases.t_bits
    if not phases.exhaustive:
        vals = np.cos(s * np.asarray(phases.thetas))
        if len(vals) > 1:
            eps += 2 * float(np.std(vals, ddof=1)) / np.sqrt(len(vals))
        else:
            eps += 2.0
    n, q = surface.n, surface.q
    err = float(q) ** (s * (n - 1) / 2) * phases.dim * eps
    return CountEstimate(
        s=s,
        estimate=int(round(raw)),
        raw=float(raw),
        error_bar=err,
        trace=trace,
        dim=phases.dim,
        epsilon=eps,
        exhaustive=phases.exhaustive,
    )
