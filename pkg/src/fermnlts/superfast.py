"""Interaction graphs and the superfast (edge-qubit) encoding of even Majorana operators.

The graph algebra is generated by the Hermitian vertex and edge operators::

    V_i  = i c_{2i-1} c_{2i}        (= C_(2i-1, 2i))
    E_ij = i c_{2i}   c_{2j}        (E_ji = -E_ij)

Each edge carries one qubit.  With incident edges ordered by neighbour
index the images are::

    V_i  -> prod_{e at i} Z_e
    E_ij -> X_ij prod_{k in N(i), k < j} Z_ik prod_{k in N(j), k < i} Z_jk      (i < j)

Around every cycle the edge operators multiply to a scalar on the Majorana
side; the image of that product (divided by the scalar) is a stabilizer.
Vertex images multiply to the identity, so the code represents the sector
``prod_i V_i = +1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BasisError, ConnectivityError, CoverageError, DimensionError, KindError, ParityError
from .graphs import CycleBasis, Graph, check_basis
from .operators import MajoranaTerm, OperatorSum, PauliTerm, majorana_mul, majorana_normalize, pauli_mul


def interaction_graph(h: OperatorSum) -> Graph:
    """One vertex per mode; an edge whenever a term touches both modes."""
    if h.kind != "majorana":
        raise KindError(f"interaction_graph needs a majorana sum, got {h.kind}")
    n_modes = h.size // 2
    edges = set()
    for t in h.terms():
        if not t.is_even():
            raise ParityError(f"odd term {t!r}")
        modes = sorted({(k + 1) // 2 for k in t.indices})
        for a in range(len(modes)):
            for b in range(a + 1, len(modes)):
                edges.add((modes[a], modes[b]))
    return Graph(n_modes, frozenset(edges))


def vertex_operator(i: int, n_modes: int) -> MajoranaTerm:
    return MajoranaTerm(2 * n_modes, (2 * i - 1, 2 * i))


def edge_operator(i: int, j: int, n_modes: int) -> MajoranaTerm:
    if i == j:
        raise ValueError("edge operator needs two distinct modes")
    return majorana_normalize((2 * i, 2 * j), 1j, 2 * n_modes)


Generator = tuple  # ("V", i) or ("E", i, j)


def generator_term(gen: Generator, n_modes: int) -> MajoranaTerm:
    if gen[0] == "V":
        return vertex_operator(gen[1], n_modes)
    return edge_operator(gen[1], gen[2], n_modes)


def _path(g: Graph, a: int, b: int) -> list[int]:
    parent = {a: 0}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in g.neighbors(u):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if b not in parent:
        raise CoverageError(f"no path between modes {a} and {b} in the graph")
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def edge_vertex_decompose(t: MajoranaTerm, g: Graph) -> tuple[complex, list[Generator]]:
    """``t = scalar * prod(generators)`` with vertex operators first, then edge paths.

    Odd Majoranas are traded via ``c_{2i-1} ~ V_i c_{2i}``; the surviving
    even Majoranas are paired in ascending order and each pair bridged by a
    shortest path of edge operators.
    """
    if not t.is_even():
        raise ParityError(f"odd term {t!r} is outside the graph algebra")
    n_modes = t.n_majoranas // 2
    if g.n_vertices != n_modes:
        raise DimensionError(f"graph has {g.n_vertices} vertices, term acts on {n_modes} modes")
    gens: list[Generator] = []
    evens: set[int] = set()
    for k in t.indices:
        i = (k + 1) // 2
        if k % 2:
            gens.append(("V", i))
        evens ^= {i}
    modes = sorted(evens)
    for a, b in zip(modes[0::2], modes[1::2]):
        p = _path(g, a, b)
        gens += [("E", p[s], p[s + 1]) for s in range(len(p) - 1)]
    prod = MajoranaTerm.identity(t.n_majoranas)
    for gen in gens:
        prod = majorana_mul(prod, generator_term(gen, n_modes))
    assert prod.mask == t.mask
    return t.coeff / prod.coeff, gens


@dataclass(frozen=True)
class SuperfastEncoding:
    graph: Graph
    basis: CycleBasis
    qubit_of_edge: dict
    edge_order_at_vertex: dict
    vertex_image: dict
    edge_image: dict
    stabilizer_terms: tuple
    cycle_scalars: tuple

    @property
    def n_qubits(self) -> int:
        return self.graph.n_edges

    @property
    def n_modes(self) -> int:
        return self.graph.n_vertices

    @property
    def stabilizers(self) -> OperatorSum:
        return OperatorSum("pauli", self.n_qubits, self.stabilizer_terms)

    def image(self, gen: Generator) -> PauliTerm:
        if gen[0] == "V":
            return self.vertex_image[gen[1]]
        try:
            return self.edge_image[(gen[1], gen[2])]
        except KeyError:
            raise CoverageError(f"({gen[1]}, {gen[2]}) is not an edge of the graph") from None

    def encode_term(self, t: MajoranaTerm) -> PauliTerm:
        scalar, gens = edge_vertex_decompose(t, self.graph)
        out = PauliTerm(self.n_qubits, coeff=scalar)
        for gen in gens:
            out = pauli_mul(out, self.image(gen))
        return out

    def encode(self, h: OperatorSum) -> OperatorSum:
        if h.kind != "majorana":
            raise KindError(f"superfast encoding maps majorana sums, got {h.kind}")
        if h.size != 2 * self.n_modes:
            raise DimensionError(f"sum on {h.size} Majoranas, graph has {self.n_modes} modes")
        return h.map_terms(self.encode_term, "pauli", self.n_qubits)


def superfast_encode(g: Graph, basis: CycleBasis) -> SuperfastEncoding:
    if not g.is_connected():
        raise ConnectivityError("superfast encoding needs a connected graph")
    check_basis(g, basis)
    nq = g.n_edges
    qubit = {e: q for q, e in enumerate(g.sorted_edges(), start=1)}
    order = {v: tuple((min(v, w), max(v, w)) for w in g.neighbors(v)) for v in g.vertices}

    def zmask(es) -> int:
        m = 0
        for e in es:
            m ^= 1 << (qubit[e] - 1)
        return m

    vimg = {v: PauliTerm(nq, z=zmask(order[v])) for v in g.vertices}
    eimg = {}
    for i, j in g.sorted_edges():
        z = zmask([(min(i, k), max(i, k)) for k in g.neighbors(i) if k < j])
        z ^= zmask([(min(j, k), max(j, k)) for k in g.neighbors(j) if k < i])
        img = PauliTerm(nq, x=1 << (qubit[(i, j)] - 1), z=z)
        eimg[(i, j)] = img
        eimg[(j, i)] = img.with_coeff(-img.scalar)

    n_modes = g.n_vertices
    stabs, scalars = [], []
    for cycle in basis.cycles:
        m = len(cycle)
        maj = MajoranaTerm.identity(2 * n_modes)
        pau = PauliTerm(nq)
        for s in range(m):
            a, b = cycle[s], cycle[(s + 1) % m]
            maj = majorana_mul(maj, edge_operator(a, b, n_modes))
            pau = pauli_mul(pau, eimg[(a, b)])
        if maj.mask:
            raise BasisError(f"edge operators around {list(cycle)} do not close")
        scalars.append(maj.coeff)
        stabs.append(pau.with_coeff(pau.scalar / maj.coeff))
    return SuperfastEncoding(g, basis, qubit, order, vimg, eimg, tuple(stabs), tuple(scalars))


# --------------------------------------------------------------------------
# Dense checks


def code_space_basis(enc: SuperfastEncoding, cap: int | None = None) -> np.ndarray:
    """Orthonormal columns spanning the joint +1 eigenspace of the stabilizers."""
    from .verify import dense_pauli_term

    dim = 1 << enc.n_qubits
    proj = np.eye(dim, dtype=complex)
    for s in enc.stabilizer_terms:
        proj = proj @ (np.eye(dim) + dense_pauli_term(s, cap)) / 2
    vals, vecs = np.linalg.eigh((proj + proj.conj().T) / 2)
    return vecs[:, vals > 0.5]


def code_space_spectrum(enc: SuperfastEncoding, h: OperatorSum, cap: int | None = None) -> np.ndarray:
    from .verify import dense_pauli, eigen_spectrum

    q = code_space_basis(enc, cap)
    a = q.conj().T @ dense_pauli(enc.encode(h), cap) @ q
    return eigen_spectrum((a + a.conj().T) / 2)


def parity_sector_spectrum(h: OperatorSum, cap: int | None = None) -> np.ndarray:
    """Spectrum of ``h`` (Jordan-Wigner) restricted to ``prod_i V_i = +1``."""
    from .verify import dense_majorana, eigen_spectrum

    n = h.size // 2
    full = dense_majorana(h, cap)
    # V_i -> -Z_i under Jordan-Wigner, so prod V_i = (-1)^n prod Z_i
    b = np.arange(1 << n, dtype=np.int64)
    sign = (-1) ** n * (1 - 2 * (np.bitwise_count(b) & 1).astype(np.int64))
    keep = np.nonzero(sign == 1)[0]
    return eigen_spectrum(full[np.ix_(keep, keep)])


def spectra_match(a: Sequence[float], b: Sequence[float], tol: float = 1e-9) -> bool:
    a, b = np.sort(np.asarray(a)), np.sort(np.asarray(b))
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


__all__ = [
    "interaction_graph",
    "vertex_operator",
    "edge_operator",
    "generator_term",
    "edge_vertex_decompose",
    "SuperfastEncoding",
    "superfast_encode",
    "code_space_basis",
    "code_space_spectrum",
    "parity_sector_spectrum",
    "spectra_match",
]
