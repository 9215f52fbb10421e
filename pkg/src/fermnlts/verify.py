"""Dense matrix realizations, spectra, state preparation, POVMs and spreadness.

Basis convention: computational basis states are integers ``b`` with qubit 1
as the most significant bit, so ``np.kron(A_1, A_2, ...)`` ordering holds and
an outcome string ``s_1 ... s_n`` is the integer with the same bits.

Majorana operators are realized through Jordan-Wigner, which puts mode ``j``
on qubit ``j``.  The Gaussian measurement of mode ``j`` reads the parity
``P_j = -i c_{2j-1} c_{2j}`` (``= Z_j``); outcome ``s_j = 0`` is ``P_j = +1``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import CapExceededError, DimensionError, KindError, LayoutError, ParityError, SymmetryError
from .mappings import jw_term, map_opsum
from .nlts import Circuit, GaussianLayer, assimilated_rotation_circuit, gate_generators
from .operators import HybridTerm, MajoranaTerm, OperatorSum, PauliTerm

DEFAULT_DENSE_CAP = 14


def dense_cap() -> int:
    raw = os.environ.get("FERMNLTS_DENSE_CAP")
    if raw is None:
        return DEFAULT_DENSE_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError("FERMNLTS_DENSE_CAP must be >= 1")
    return cap


def _check_cap(n_qubits: int, cap: int | None):
    cap = dense_cap() if cap is None else cap
    if n_qubits > cap:
        raise CapExceededError(f"{n_qubits} qubits exceeds the dense cap of {cap}")


def _reverse(mask: int, n: int) -> int:
    out = 0
    for j in range(n):
        if (mask >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out


def _pauli_entries(t: PauliTerm):
    """``(rows, cols, vals)`` of the single nonzero per column."""
    n = t.n_qubits
    xr, zr = _reverse(t.x, n), _reverse(t.z, n)
    cols = np.arange(1 << n, dtype=np.int64)
    signs = 1 - 2 * (np.bitwise_count(cols & zr) & 1).astype(np.int64)
    return cols ^ xr, cols, t.scalar * signs


def dense_pauli_term(t: PauliTerm, cap: int | None = None) -> np.ndarray:
    _check_cap(t.n_qubits, cap)
    rows, cols, vals = _pauli_entries(t)
    out = np.zeros((1 << t.n_qubits,) * 2, dtype=complex)
    out[rows, cols] = vals
    return out


def dense_pauli(h: OperatorSum, cap: int | None = None) -> np.ndarray:
    if h.kind != "pauli":
        raise KindError(f"dense_pauli needs a pauli sum, got {h.kind}")
    _check_cap(h.size, cap)
    out = np.zeros((1 << h.size,) * 2, dtype=complex)
    for t in h.terms():
        rows, cols, vals = _pauli_entries(t)
        out[rows, cols] += vals
    return out


def dense_majorana_term(t: MajoranaTerm, cap: int | None = None) -> np.ndarray:
    return dense_pauli_term(jw_term(t), cap)


def dense_majorana(h: OperatorSum, cap: int | None = None) -> np.ndarray:
    if h.kind != "majorana":
        raise KindError(f"dense_majorana needs a majorana sum, got {h.kind}")
    _check_cap(h.size // 2, cap)
    return dense_pauli(map_opsum("jw", h), cap)


def dense_hybrid(h: OperatorSum, cap: int | None = None) -> np.ndarray:
    """``pauli (x) JW(majorana)`` with the auxiliary modes after the qubits."""
    if h.kind != "hybrid":
        raise KindError(f"dense_hybrid needs a hybrid sum, got {h.kind}")
    n = h.size
    _check_cap(n + n // 2, cap)
    out = np.zeros((1 << (n + n // 2),) * 2, dtype=complex)
    for t in h.terms():
        p = dense_pauli_term(t.pauli, cap)
        m = dense_majorana_term(t.majorana, cap)
        out += t.coeff * np.kron(p, m)
    return out


def dense(h: OperatorSum, cap: int | None = None) -> np.ndarray:
    return {"pauli": dense_pauli, "majorana": dense_majorana, "hybrid": dense_hybrid}[h.kind](h, cap)


def pauli_decompose(rho: np.ndarray) -> OperatorSum:
    """``rho = sum_P Tr(P^dagger rho) / 2^n P`` over ``P = X^x Z^z``."""
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.shape != (dim, dim) or 1 << n != dim:
        raise DimensionError("expected a square matrix of power-of-two size")
    cols = np.arange(dim, dtype=np.int64)
    terms = []
    for x in range(dim):
        for z in range(dim):
            t = PauliTerm(n, x, z)
            rows, _, vals = _pauli_entries(t)
            # Tr(P^dagger rho) = sum_b conj(P[b^x, b]) rho[b^x, b]
            c = np.sum(np.conj(vals) * rho[rows, cols]) / dim
            if abs(c) > 1e-15:
                terms.append(t.with_coeff(complex(c)))
    return OperatorSum("pauli", n, terms)


# --------------------------------------------------------------------------
# Spectra


def is_hermitian(a: np.ndarray, atol: float = 1e-12) -> bool:
    return a.shape[0] == a.shape[1] and float(np.max(np.abs(a - a.conj().T), initial=0.0)) < atol


def eigen_spectrum(a: np.ndarray, atol: float = 1e-12, check: int = 3) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix, with a residual spot check."""
    if not is_hermitian(a, atol):
        raise SymmetryError("eigen_spectrum needs a Hermitian matrix")
    vals, vecs = np.linalg.eigh(a)
    norm = max(np.linalg.norm(a, 2) if a.size else 0.0, 1.0)
    for k in sorted({0, len(vals) // 2, len(vals) - 1})[:check]:
        if not len(vals):
            break
        v = vecs[:, k]
        if np.linalg.norm(a @ v - vals[k] * v) > 1e-9 * norm:
            raise ArithmeticError("eigensolver residual check failed")
    return vals


def ground_state_density(a: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Normalized projector onto the ground space (the maximally mixed ground state)."""
    if not is_hermitian(a):
        raise SymmetryError("ground_state_density needs a Hermitian matrix")
    vals, vecs = np.linalg.eigh(a)
    sel = vecs[:, vals <= vals[0] + tol]
    return sel @ sel.conj().T / sel.shape[1]


def spectrum_match_with_degeneracy(spec_q: Sequence[float], spec_f: Sequence[float], n: int, tol: float = 1e-9) -> bool:
    if n % 2:
        raise DimensionError("degeneracy factor 2^(n/2) needs even n")
    spec_q = np.sort(np.asarray(spec_q, dtype=float))
    spec_f = np.sort(np.asarray(spec_f, dtype=float))
    factor = 1 << (n // 2)
    if len(spec_f) != factor * len(spec_q):
        raise DimensionError(f"expected {factor * len(spec_q)} fermionic eigenvalues, got {len(spec_f)}")
    return bool(np.all(np.abs(np.repeat(spec_q, factor) - spec_f) <= tol))


# --------------------------------------------------------------------------
# Circuits and states


def gate_unitary(mask: int, factor: complex, theta: float, n_majoranas: int, cap: int | None = None) -> np.ndarray:
    """``exp(theta G) = cos(theta) + sin(theta) G`` for ``G = factor * C_mask``, ``G^2 = -1``."""
    g = dense_majorana_term(MajoranaTerm.from_mask(n_majoranas, mask, factor), cap)
    return math.cos(theta) * np.eye(g.shape[0]) + math.sin(theta) * g


def circuit_unitary(c: Circuit, cap: int | None = None) -> np.ndarray:
    n_modes = c.n_majoranas // 2
    _check_cap(n_modes, cap)
    u = np.eye(1 << n_modes, dtype=complex)
    for layer in c.layers:
        for mask, factor, theta in gate_generators(layer, c.n_majoranas):
            u = gate_unitary(mask, factor, theta, c.n_majoranas, cap) @ u
    return u


def sigma_g(n_modes: int) -> np.ndarray:
    """``prod_j (1 + i c_{2j-1} c_{2j}) / 2``: every mode occupied."""
    dim = 1 << n_modes
    out = np.zeros((dim, dim), dtype=complex)
    out[dim - 1, dim - 1] = 1.0
    return out


def parity_operator(n_modes: int) -> np.ndarray:
    b = np.arange(1 << n_modes, dtype=np.int64)
    return np.diag((1 - 2 * (np.bitwise_count(b) & 1).astype(np.int64)).astype(complex))


def is_even_state(rho: np.ndarray, atol: float = 1e-10) -> bool:
    n = rho.shape[0].bit_length() - 1
    p = np.diag(parity_operator(n))
    return bool(np.max(np.abs(p[:, None] * rho * p[None, :] - rho), initial=0.0) <= atol)


def partial_trace_trailing(rho: np.ndarray, n_trace: int) -> np.ndarray:
    dim = rho.shape[0]
    keep = dim >> n_trace
    r = rho.reshape(keep, 1 << n_trace, keep, 1 << n_trace)
    return np.einsum("ajbj->ab", r)


def prepare_state(c: Circuit, init: np.ndarray | None = None, trace_out: int | Sequence[int] = 0, cap: int | None = None) -> np.ndarray:
    """``Tr_trailing(U init U^dagger)``; ``init`` defaults to the all-occupied Gaussian state.

    ``trace_out`` is a count of trailing modes or an explicit list of modes,
    which must then be exactly the trailing ones.
    """
    n_modes = c.n_majoranas // 2
    _check_cap(n_modes, cap)
    if init is None:
        init = sigma_g(n_modes)
    if init.shape != (1 << n_modes,) * 2:
        raise DimensionError(f"initial state is not on {n_modes} modes")
    if not is_even_state(init):
        raise ParityError("initial state does not have definite-parity (even) structure")
    if not isinstance(trace_out, int):
        modes = sorted(int(m) for m in trace_out)
        if modes != list(range(n_modes - len(modes) + 1, n_modes + 1)):
            raise LayoutError(f"only trailing modes can be traced out, got {modes}")
        trace_out = len(modes)
    if not 0 <= trace_out < n_modes + 1:
        raise LayoutError(f"cannot trace out {trace_out} of {n_modes} modes")
    u = circuit_unitary(c, cap)
    return partial_trace_trailing(u @ init @ u.conj().T, trace_out)


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


# --------------------------------------------------------------------------
# Measurement distributions


@dataclass(frozen=True)
class DistributionTable:
    n_bits: int
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.shape != (1 << self.n_bits,):
            raise DimensionError(f"need 2^{self.n_bits} probabilities, got {p.shape}")
        if np.any(p < -1e-10) or abs(p.sum() - 1) > 1e-10:
            raise ValueError("not a probability distribution")
        p = np.where(p < 0, 0.0, p)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def marginal_leading(self, k: int) -> "DistributionTable":
        """Distribution of the first ``k`` bits (sums out the trailing ones)."""
        if not 0 <= k <= self.n_bits:
            raise DimensionError("marginal size out of range")
        return DistributionTable(k, self.probs.reshape(1 << k, -1).sum(axis=1))

    def bitstring(self, s: int) -> str:
        return format(s, f"0{self.n_bits}b") if self.n_bits else ""

    @classmethod
    def point_mass(cls, n_bits: int, s: int) -> "DistributionTable":
        p = np.zeros(1 << n_bits)
        p[s] = 1.0
        return cls(n_bits, p)


def _diag_distribution(u: np.ndarray, rho: np.ndarray) -> DistributionTable:
    n = rho.shape[0].bit_length() - 1
    p = np.real(np.einsum("ij,jk,ik->i", u, rho, u.conj()))
    return DistributionTable(n, p)


def rotation_unitary(thetas: Sequence[float], phis: Sequence[float]) -> np.ndarray:
    """``R = (x)_j exp(i theta_j/2 (sin phi_j X - cos phi_j Y))``."""
    if len(thetas) != len(phis):
        raise DimensionError("need one phi per theta")
    out = np.ones((1, 1), dtype=complex)
    for th, ph in zip(thetas, phis):
        c, s = math.cos(th / 2), math.sin(th / 2)
        gen = np.array([[0, math.sin(ph) + 1j * math.cos(ph)], [math.sin(ph) - 1j * math.cos(ph), 0]])
        out = np.kron(out, c * np.eye(2) + 1j * s * gen)
    return out


def pauli_povm_distribution(rho: np.ndarray, thetas: Sequence[float], phis: Sequence[float]) -> DistributionTable:
    """``p(s) = <s| R rho R^dagger |s>``."""
    n = rho.shape[0].bit_length() - 1
    if len(thetas) != n or len(phis) != n:
        raise DimensionError(f"need {n} angles of each kind")
    return _diag_distribution(rotation_unitary(thetas, phis), rho)


def gaussian_povm_distribution(rho: np.ndarray, g: Circuit | None = None, cap: int | None = None) -> DistributionTable:
    """``p(s) = Tr(Pi_s G rho G^dagger)`` with ``Pi_s = prod_j (1 + (-1)^s_j P_j)/2``."""
    n = rho.shape[0].bit_length() - 1
    if g is None:
        return _diag_distribution(np.eye(1 << n), rho)
    if not g.is_gaussian():
        raise KindError("the measurement circuit contains a non-Gaussian layer")
    if g.n_majoranas != 2 * n:
        raise DimensionError(f"circuit on {g.n_majoranas} Majoranas, state on {n} modes")
    return _diag_distribution(circuit_unitary(g, cap), rho)


def lift_qubit_state(rho_q: np.ndarray, cap: int | None = None) -> np.ndarray:
    """Fermionic image of ``rho_q (x) 1/2^(n/2)`` under qubit assimilation."""
    n = rho_q.shape[0].bit_length() - 1
    if n % 2:
        raise ParityError("assimilation needs an even qubit count")
    image = map_opsum("assimilate", pauli_decompose(rho_q))
    return dense_majorana(image, cap) / (1 << (n // 2))


def lifted_measurement_circuit(thetas: Sequence[float], phis: Sequence[float]) -> Circuit:
    return assimilated_rotation_circuit(thetas, phis)


# --------------------------------------------------------------------------
# Spreadness


@dataclass(frozen=True)
class SpreadnessReport:
    L: int
    mu_star: float
    witness_S1: tuple[int, ...]
    witness_S2: tuple[int, ...]
    method: str
    n_bits: int
    mass_S1: float
    mass_S2: float

    def is_spread(self, mu: float, atol: float = 1e-12) -> bool:
        return self.mu_star >= mu - atol


EXACT_COMPONENT_LIMIT = 22


def _components(support: np.ndarray, L: int) -> list[list[int]]:
    parent = list(range(len(support)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(support)):
        close = np.nonzero(np.bitwise_count(support[i + 1 :] ^ support[i]) < L)[0]
        for j in close:
            ri, rj = find(i), find(i + 1 + int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(support)):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def _greedy_bipartition(weights: list[float]) -> int:
    mask, a, b = 0, 0.0, 0.0
    for i in sorted(range(len(weights)), key=lambda i: (-weights[i], i)):
        if a <= b:
            mask |= 1 << i
            a += weights[i]
        else:
            b += weights[i]
    return mask


def spreadness(p: DistributionTable, L: int, eps: float = 1e-12, exact_limit: int = EXACT_COMPONENT_LIMIT) -> SpreadnessReport:
    """Largest ``mu`` with two sets of mass ``>= mu`` at Hamming distance ``>= L``.

    Strings of probability ``<= eps`` are ignored.  Support strings closer
    than ``L`` must share a side, so the search runs over bipartitions of
    the connected components of that closeness graph.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    support = np.nonzero(p.probs > eps)[0].astype(np.int64)
    comps = _components(support, L)
    masses = [float(p.probs[support[c]].sum()) for c in comps]
    if len(comps) <= exact_limit:
        _, mask = _kernels.best_bipartition(masses) if masses else (0.0, 0)
        method = "exact"
    else:
        mask = _greedy_bipartition(masses)
        method = "greedy"
    s1 = tuple(sorted(int(support[i]) for k, c in enumerate(comps) if mask >> k & 1 for i in c))
    s2 = tuple(sorted(int(support[i]) for k, c in enumerate(comps) if not mask >> k & 1 for i in c))
    m1 = float(p.probs[list(s1)].sum()) if s1 else 0.0
    m2 = float(p.probs[list(s2)].sum()) if s2 else 0.0
    return SpreadnessReport(L, min(m1, m2), s1, s2, method, p.n_bits, m1, m2)


def spreadness_exhaustive(p: DistributionTable, L: int, eps: float = 1e-12, max_support: int = 16) -> SpreadnessReport:
    """Exact optimum over all disjoint ``S1, S2`` of the support, strings may be left out.

    The component search in :func:`spreadness` never drops a string, so it
    can miss witnesses that discard a low-mass bridge between two clusters.
    This branch-and-bound handles small supports only.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    support = [int(s) for s in np.nonzero(p.probs > eps)[0]]
    if len(support) > max_support:
        raise CapExceededError(f"support of {len(support)} strings exceeds max_support={max_support}")
    support.sort(key=lambda s: (-p.probs[s], s))
    w = [float(p.probs[s]) for s in support]
    rest = [0.0] * (len(w) + 1)
    for i in range(len(w) - 1, -1, -1):
        rest[i] = rest[i + 1] + w[i]
    best = [0.0, (), ()]

    def far(s, side):
        return all(bin(s ^ t).count("1") >= L for t in side)

    def go(i, s1, s2, m1, m2):
        if min(m1, m2) > best[0]:
            best[:] = [min(m1, m2), tuple(s1), tuple(s2)]
        if i == len(w) or min(m1 + rest[i], m2 + rest[i], (m1 + m2 + rest[i]) / 2) <= best[0]:
            return
        s = support[i]
        if far(s, s2):
            go(i + 1, s1 + [s], s2, m1 + w[i], m2)
        if s1 and far(s, s1):
            go(i + 1, s1, s2 + [s], m1, m2 + w[i])
        go(i + 1, s1, s2, m1, m2)

    go(0, [], [], 0.0, 0.0)
    s1, s2 = tuple(sorted(best[1])), tuple(sorted(best[2]))
    m1 = float(p.probs[list(s1)].sum()) if s1 else 0.0
    m2 = float(p.probs[list(s2)].sum()) if s2 else 0.0
    return SpreadnessReport(L, min(m1, m2), s1, s2, "exhaustive", p.n_bits, m1, m2)


def min_distance(s1: Sequence[int], s2: Sequence[int]) -> int | None:
    if not s1 or not s2:
        return None
    b = np.asarray(s2, dtype=np.int64)
    return int(min(np.bitwise_count(b ^ a).min() for a in s1))


__all__ = [
    "DEFAULT_DENSE_CAP",
    "dense_cap",
    "dense_pauli_term",
    "dense_pauli",
    "dense_majorana_term",
    "dense_majorana",
    "dense_hybrid",
    "dense",
    "pauli_decompose",
    "is_hermitian",
    "eigen_spectrum",
    "ground_state_density",
    "spectrum_match_with_degeneracy",
    "gate_unitary",
    "circuit_unitary",
    "sigma_g",
    "parity_operator",
    "is_even_state",
    "partial_trace_trailing",
    "prepare_state",
    "purity",
    "DistributionTable",
    "rotation_unitary",
    "pauli_povm_distribution",
    "gaussian_povm_distribution",
    "lift_qubit_state",
    "lifted_measurement_circuit",
    "SpreadnessReport",
    "spreadness",
    "spreadness_exhaustive",
    "min_distance",
]
