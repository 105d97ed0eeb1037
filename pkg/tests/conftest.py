"""Shared oracle helpers: independent dense-matrix computation of Pauli words.

The dense oracle rebuilds operators from their site letters with numpy
Kronecker products and checks all symplectic arithmetic against plain
matrix algebra.
"""

import numpy as np

from bellcheck.pauli import PauliOperator

LETTER_MATRIX = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_oracle(op: PauliOperator) -> np.ndarray:
    """Kronecker-product reconstruction, independent of bellcheck's export."""
    m = np.eye(1, dtype=complex)
    for j in range(1, op.num_qubits + 1):
        m = np.kron(m, LETTER_MATRIX[op.letter(j)])
    return (1j ** op.phase_exponent) * m


def random_pauli(rng: np.random.Generator, num_qubits: int) -> PauliOperator:
    return PauliOperator(
        num_qubits,
        int(rng.integers(0, 1 << num_qubits)),
        int(rng.integers(0, 1 << num_qubits)),
        int(rng.integers(0, 4)),
    )
