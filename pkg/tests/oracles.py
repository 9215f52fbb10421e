"""Independent dense references built from explicit Kronecker products."""

from __future__ import annotations

from functools import reduce

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
LETTERS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_all(mats):
    return reduce(np.kron, mats, np.eye(1, dtype=complex))


def pauli_string(n, ops):
    """Ordered product of single-qubit letters ``[("X", 1), ...]``."""
    out = np.eye(2**n, dtype=complex)
    for letter, q in ops:
        mats = [I2] * n
        mats[q - 1] = LETTERS[letter]
        out = out @ kron_all(mats)
    return out


def symplectic(n, x, z, phase=0, coeff=1.0):
    """``coeff i^phase prod_j X_j^x_j Z_j^z_j`` with masks bit ``j-1`` for qubit ``j``."""
    out = np.eye(2**n, dtype=complex)
    for j in range(1, n + 1):
        if (x >> (j - 1)) & 1:
            out = out @ pauli_string(n, [("X", j)])
        if (z >> (j - 1)) & 1:
            out = out @ pauli_string(n, [("Z", j)])
    return coeff * (1j) ** phase * out


def jw_majorana(k, n_modes):
    j = (k + 1) // 2
    mats = [Z] * (j - 1) + [X if k % 2 else Y] + [I2] * (n_modes - j)
    return kron_all(mats)


def majorana_word(word, n_modes):
    out = np.eye(2**n_modes, dtype=complex)
    for k in word:
        out = out @ jw_majorana(k, n_modes)
    return out


def c_k(indices, n_modes, coeff=1.0):
    """``coeff * i^{|K|(|K|-1)/2} c_k1 ... c_km``."""
    m = len(indices)
    return coeff * (1j) ** (m * (m - 1) // 2) * majorana_word(indices, n_modes)
