"""Dense state vectors, shared entangled states, and projective measurement.

Basis-index convention: qubit 1 is the most significant bit of the basis
index, matching the dense-matrix export of the Pauli module.  Shared
states use the block layout: for n pairs, the first observer holds
qubits 1..n, the second holds n+1..2n, and qubit k is paired with n+k.

All built-in states have dyadic-rational amplitudes, so the eigenrelation
and product-constraint checks hold to 1e-12 with room to spare.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliOperator, commutes, format_pauli, relabel

ATOL = 1e-12
MAX_STATE_QUBITS = 26
MAX_PAIRS = 13

_PHASES = (1, 1j, -1, -1j)


@dataclass(frozen=True)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_STATE_QUBITS:
            raise ValueError(f"num_qubits must be in 1..{MAX_STATE_QUBITS}")
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"expected {1 << self.num_qubits} amplitudes, got {amp.shape}"
            )
        if abs(np.vdot(amp, amp).real - 1.0) > ATOL:
            raise ValueError("state is not normalized")
        amp = amp.copy()
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class QubitLayout:
    """Block layout for n shared pairs: observer A holds 1..n, B holds n+1..2n."""

    n: int

    @property
    def alice_indices(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def bob_indices(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1, 2 * self.n + 1))

    def alice_embedding(self, op: PauliOperator) -> PauliOperator:
        return relabel(op, {k: k for k in range(1, self.n + 1)}, 2 * self.n)

    def bob_embedding(self, op: PauliOperator) -> PauliOperator:
        return relabel(op, {k: self.n + k for k in range(1, self.n + 1)}, 2 * self.n)


def bell_product_state(n: int) -> StateVector:
    """Product of n Bell pairs (|00>+|11>)/sqrt(2) in the block layout.

    Amplitude 2^(-n/2) on exactly the basis states whose first-block bits
    equal their second-block bits.
    """
    if not 1 <= n <= MAX_PAIRS:
        raise ValueError(f"n must be in 1..{MAX_PAIRS}")
    amp = np.zeros(1 << (2 * n), dtype=complex)
    scale = 2.0 ** (-n / 2)
    for a in range(1 << n):
        amp[(a << n) | a] = scale
    return StateVector(2 * n, amp)


def singlet_product_state(n: int) -> StateVector:
    """Product of n singlets (|01>-|10>)/sqrt(2) in the block layout."""
    if not 1 <= n <= MAX_PAIRS:
        raise ValueError(f"n must be in 1..{MAX_PAIRS}")
    amp = np.zeros(1 << (2 * n), dtype=complex)
    scale = 2.0 ** (-n / 2)
    full = (1 << n) - 1
    for a in range(1 << n):
        amp[(a << n) | (a ^ full)] = scale * (-1) ** a.bit_count()
    return StateVector(2 * n, amp)


def ghz_state() -> StateVector:
    """Three-qubit GHZ state (|000> - |111>)/sqrt(2).

    This sign convention is the joint eigenstate of the XYY-type
    observables with eigenvalues (+1, +1, +1) and of XXX with -1.
    """
    amp = np.zeros(8, dtype=complex)
    amp[0] = 2.0 ** -0.5
    amp[7] = -(2.0 ** -0.5)
    return StateVector(3, amp)


def _dense_mask(mask: int, num_qubits: int) -> int:
    # Internal masks use bit j-1 for qubit j; basis indices put qubit 1
    # at the MSB, so the mask's bits reverse.
    out = 0
    for j in range(num_qubits):
        if mask >> j & 1:
            out |= 1 << (num_qubits - 1 - j)
    return out


def _bit_parity(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return (v & np.uint64(1)).astype(np.int64)


def apply_pauli(op: PauliOperator, state: StateVector) -> np.ndarray:
    """Raw amplitudes of op|state> (not renormalized; Pauli words are unitary)."""
    if op.num_qubits != state.num_qubits:
        raise ValueError(
            f"operator acts on {op.num_qubits} qubits, state has {state.num_qubits}"
        )
    m = state.num_qubits
    dx = _dense_mask(op.x_mask, m)
    dz = _dense_mask(op.z_mask, m)
    # op = i^(phase+y) * tensor(X^x Z^z) with y the number of Y sites, so
    # op|b> = i^(phase+y) * (-1)^{|b & z|} |b xor x>.
    coef = _PHASES[(op.phase_exponent + (op.x_mask & op.z_mask).bit_count()) % 4]
    idx = np.arange(1 << m, dtype=np.uint64)
    signs = 1 - 2 * _bit_parity(idx & np.uint64(dz))
    out = np.empty_like(state.amplitudes)
    out[idx ^ np.uint64(dx)] = coef * signs * state.amplitudes
    return out


def expectation(state: StateVector, op: PauliOperator) -> float:
    """<state| op |state> for a Hermitian Pauli word."""
    if not op.is_hermitian:
        raise ValueError(f"operator {format_pauli(op)} is not Hermitian")
    value = np.vdot(state.amplitudes, apply_pauli(op, state))
    if abs(value.imag) > ATOL:
        raise AssertionError(f"expectation has imaginary part {value.imag}")
    return float(value.real)


def dense_expectation(state: StateVector, matrix: np.ndarray) -> float:
    """<state| M |state> for a dense Hermitian matrix."""
    value = np.vdot(state.amplitudes, matrix @ state.amplitudes)
    if abs(value.imag) > 1e-9 * max(1.0, abs(value.real)):
        raise AssertionError(f"expectation has imaginary part {value.imag}")
    return float(value.real)


def eigenrelation_check(n: int, op: PauliOperator) -> bool:
    """Whether (op on block A)(op on block B) fixes the n-pair Bell product state."""
    if op.num_qubits != n:
        raise ValueError(f"operator acts on {op.num_qubits} qubits, expected {n}")
    layout = QubitLayout(n)
    state = bell_product_state(n)
    moved = StateVector(2 * n, apply_pauli(layout.bob_embedding(op), state))
    moved = apply_pauli(layout.alice_embedding(op), moved)
    return float(np.linalg.norm(moved - state.amplitudes)) < ATOL


def measure_context(
    state: StateVector,
    context_ops: list[PauliOperator] | tuple[PauliOperator, ...],
    rng: np.random.Generator,
) -> tuple[list[int], StateVector]:
    """Sequentially measure mutually commuting Hermitian words, projectively.

    For each observable the +1 probability is (1 + <O>)/2; the outcome is
    drawn, the state projected onto (I + outcome*O)/2 and renormalized.
    Probabilities within 1e-12 of 0 or 1 are snapped, so outcomes that
    are algebraically forced (context product constraints) are exact.
    """
    ops = list(context_ops)
    for op in ops:
        if not op.is_hermitian:
            raise ValueError(f"observable {format_pauli(op)} is not Hermitian")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not commutes(ops[i], ops[j]):
                raise ValueError(
                    f"observables {format_pauli(ops[i])} and "
                    f"{format_pauli(ops[j])} do not commute"
                )
    amp = state.amplitudes
    outcomes = []
    for op in ops:
        applied = apply_pauli(op, StateVector(state.num_qubits, amp))
        p_plus = (1.0 + float(np.vdot(amp, applied).real)) / 2.0
        if p_plus > 1.0 - ATOL:
            p_plus = 1.0
        elif p_plus < ATOL:
            p_plus = 0.0
        outcome = +1 if rng.random() < p_plus else -1
        projected = (amp + outcome * applied) / 2.0
        norm = float(np.linalg.norm(projected))
        if norm < ATOL:
            raise RuntimeError("projection collapsed the state (measurement bug)")
        amp = projected / norm
        outcomes.append(outcome)
    return outcomes, StateVector(state.num_qubits, amp)
