"""Shared independent oracles for the test suite.

These helpers deliberately avoid the package's own dense backend: string
matrices are assembled from literal 2x2 Paulis with np.kron, so that the
bit-action implementation in wignerlab.dense is tested against a second,
structurally different construction.
"""

import numpy as np

from wignerlab.pauli import PauliString

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_2X2 = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def kron_chain(factors_low_to_high: list[np.ndarray]) -> np.ndarray:
    """Tensor product with list index = bit index (bit 0 least significant)."""
    out = np.eye(1, dtype=complex)
    for f in factors_low_to_high:
        out = np.kron(f, out)
    return out


def oracle_string_matrix(p: PauliString) -> np.ndarray:
    """i^phase * prod_bit X^x Z^z, built per bit from literal 2x2 matrices."""
    n = p.layout.total_sites
    factors = []
    for b in range(n):
        f = I2
        if (p.x_mask >> b) & 1:
            f = f @ X2
        if (p.z_mask >> b) & 1:
            f = f @ Z2
        factors.append(f)
    return (1j ** p.phase_exp) * kron_chain(factors)


def embed_two_site(gate: np.ndarray, n: int, hi: int, lo: int) -> np.ndarray:
    """Embed a 4x4 gate acting on bits (hi, lo) into an n-bit space.

    The 4x4 gate is indexed as 2*hi_bit + lo_bit.
    """
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    rest = [b for b in range(n) if b not in (hi, lo)]
    for col in range(dim):
        chi, clo = (col >> hi) & 1, (col >> lo) & 1
        for r in range(4):
            amp = gate[r, 2 * chi + clo]
            if amp == 0:
                continue
            row = col & ~(1 << hi) & ~(1 << lo)
            row |= ((r >> 1) & 1) << hi
            row |= (r & 1) << lo
            out[row, col] += amp
    return out
