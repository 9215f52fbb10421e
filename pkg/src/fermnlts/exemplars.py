"""Small CSS-code Hamiltonians ``sum_S (1 - S)/2`` over stabilizer generators."""

from __future__ import annotations

from .operators import OperatorSum, PauliTerm

STEANE_SUPPORTS = ((4, 5, 6, 7), (2, 3, 6, 7), (1, 3, 5, 7))


def stabilizer_hamiltonian(n: int, stabilizers: list[PauliTerm]) -> OperatorSum:
    terms = []
    for s in stabilizers:
        terms.append(PauliTerm.identity(n, 0.5))
        terms.append(s.with_coeff(-0.5 * s.scalar))
    return OperatorSum("pauli", n, terms)


def repetition_stabilizers(n: int) -> list[PauliTerm]:
    return [PauliTerm.from_ops(n, [("Z", i), ("Z", i + 1)]) for i in range(1, n)]


def repetition_hamiltonian(n: int) -> OperatorSum:
    """``sum_{i<n} (1 - Z_i Z_{i+1})/2``; ground space spanned by ``|0^n>`` and ``|1^n>``."""
    if n < 2:
        raise ValueError("the repetition code needs n >= 2")
    return stabilizer_hamiltonian(n, repetition_stabilizers(n))


def steane_stabilizers(n: int = 7) -> list[PauliTerm]:
    out = []
    for letter in ("X", "Z"):
        for supp in STEANE_SUPPORTS:
            out.append(PauliTerm.from_ops(n, [(letter, q) for q in supp]))
    return out


def steane_hamiltonian(pad: bool = False) -> OperatorSum:
    """The [[7,1,3]] code; ``pad`` adds an idle eighth qubit so assimilation applies."""
    n = 8 if pad else 7
    return stabilizer_hamiltonian(n, steane_stabilizers(n))


EXEMPLARS = ("repetition", "steane")
