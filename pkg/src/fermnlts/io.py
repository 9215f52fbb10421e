"""Line-oriented text formats.

Hamiltonian::

    hamiltonian <pauli|majorana|hybrid> <n>
    term <re> <im> <op> <op> ...

``n`` counts qubits for ``pauli`` and ``hybrid`` files and Majoranas for
``majorana`` files.  Pauli ops are ``X3``, ``Y1``, ``Z7`` and are multiplied
in the order written.  Majorana ops ``c4`` written as ``c_k1 ... c_km``
stand for ``i**(m(m-1)/2) c_k1 ... c_km``, which is ``C_K`` when the indices
ascend.  Hybrid terms mix both, the ``c`` ops naming auxiliary Majoranas.

Graph::

    graph <n_vertices>
    edge <i> <j>

Cycle basis: one cycle per line, its vertices separated by spaces.

Circuit::

    circuit <n_majoranas>
    gaussian (k1 k2 w) (k1 k2 w) ...
    nongaussian (k1 k2 omega) (k1 k2 k3 k4 omega) ...

Everywhere ``#`` starts a comment and blank lines are ignored.  Floats are
written with ``repr`` so parsing recovers them bit for bit.
"""

from __future__ import annotations

import re
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionError, OperatorIndexError, ParseError
from .graphs import CycleBasis, CycleBasisReport, Graph
from .nlts import Circuit, GaussianLayer, NonGaussianLayer
from .operators import (
    IPOW,
    HybridTerm,
    MajoranaTerm,
    OperatorSum,
    PauliTerm,
    _tri,
    majorana_normalize,
)
from .verify import DistributionTable, SpreadnessReport


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def fmt_float(x: float) -> str:
    x = float(x) + 0.0
    return repr(x)


def _float(tok: str, no: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", no) from None


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no) from None


def _header(lines, keyword: str, text_kind: str):
    try:
        no, toks = next(lines)
    except StopIteration:
        raise ParseError(f"empty {text_kind} file", 1) from None
    if toks[0] != keyword:
        raise ParseError(f"expected '{keyword}' header, got {toks[0]!r}", no)
    return no, toks


# --------------------------------------------------------------------------
# Hamiltonians

_OP = re.compile(r"^([XYZc])(\d+)$")


def parse_hamiltonian(text: str) -> OperatorSum:
    lines = _lines(text)
    no, toks = _header(lines, "hamiltonian", "hamiltonian")
    if len(toks) != 3 or toks[1] not in ("pauli", "majorana", "hybrid"):
        raise ParseError("header must be 'hamiltonian <pauli|majorana|hybrid> <n>'", no)
    kind, n = toks[1], _int(toks[2], no)
    if n < 1:
        raise ParseError("size must be positive", no)
    if kind != "pauli" and n % 2:
        raise ParseError(f"a {kind} file needs an even size", no)
    h = OperatorSum(kind, n)
    terms = []
    for no, toks in lines:
        if toks[0] != "term" or len(toks) < 3:
            raise ParseError("expected 'term <re> <im> <ops>...'", no)
        coeff = complex(_float(toks[1], no), _float(toks[2], no))
        paulis, majs = [], []
        for tok in toks[3:]:
            m = _OP.match(tok)
            if not m:
                raise ParseError(f"bad operator token {tok!r}", no)
            (majs if m.group(1) == "c" else paulis).append((m.group(1), int(m.group(2))))
        if kind == "pauli" and majs or kind == "majorana" and paulis:
            raise ParseError(f"operator kind does not match a {kind} file", no)
        try:
            terms.append(_build_term(kind, n, coeff, paulis, [k for _, k in majs]))
        except OperatorIndexError as exc:
            raise OperatorIndexError(f"line {no}: {exc}") from None
        except DimensionError as exc:
            raise ParseError(str(exc), no) from None
    return OperatorSum(kind, n, terms) if terms else h


def _build_term(kind: str, n: int, coeff: complex, paulis, majs):
    mcoeff = IPOW[_tri(len(majs)) % 4]
    if kind == "pauli":
        return PauliTerm.from_ops(n, paulis, coeff)
    if kind == "majorana":
        return majorana_normalize(majs, coeff * mcoeff, n)
    p = PauliTerm.from_ops(n, paulis)
    m = majorana_normalize(majs, mcoeff, n)
    return HybridTerm(n, p, m, coeff)


def _coeff_tokens(c: complex) -> str:
    return f"{fmt_float(c.real)} {fmt_float(c.imag)}"


def term_line(kind: str, t) -> str:
    if kind == "pauli":
        ops = [f"{l}{q}" for l, q in t.letters()]
        c = t.hermitian_coeff()
    elif kind == "majorana":
        ops = [f"c{k}" for k in t.indices]
        c = t.coeff
    else:
        ops = [f"{l}{q}" for l, q in t.pauli.letters()] + [f"c{k}" for k in t.majorana.indices]
        c = t.coeff * t.pauli.hermitian_coeff()
    return " ".join(["term", _coeff_tokens(complex(c) + 0j)] + ops)


def serialize_hamiltonian(h: OperatorSum) -> str:
    out = [f"hamiltonian {h.kind} {h.size}"] + [term_line(h.kind, t) for t in h.terms()]
    return "\n".join(out) + "\n"


def serialize_term_list(kind: str, size: int, terms: Sequence) -> str:
    """Like :func:`serialize_hamiltonian` but keeps the given order and duplicates."""
    return "\n".join([f"hamiltonian {kind} {size}"] + [term_line(kind, t) for t in terms]) + "\n"


# --------------------------------------------------------------------------
# Graphs and cycle bases


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    no, toks = _header(lines, "graph", "graph")
    if len(toks) != 2:
        raise ParseError("header must be 'graph <n_vertices>'", no)
    n = _int(toks[1], no)
    if n < 1:
        raise ParseError("vertex count must be positive", no)
    edges = set()
    for no, toks in lines:
        if toks[0] != "edge" or len(toks) != 3:
            raise ParseError("expected 'edge <i> <j>'", no)
        i, j = _int(toks[1], no), _int(toks[2], no)
        if i == j:
            raise ParseError("loops are not allowed", no)
        if not (1 <= i <= n and 1 <= j <= n):
            raise OperatorIndexError(f"line {no}: vertex out of range 1..{n}")
        e = (min(i, j), max(i, j))
        if e in edges:
            raise ParseError(f"duplicate edge {e}", no)
        edges.add(e)
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    return "\n".join([f"graph {g.n_vertices}"] + [f"edge {u} {v}" for u, v in g.sorted_edges()]) + "\n"


def parse_cycle_basis(text: str, g: Graph) -> CycleBasis:
    cycles = []
    for no, toks in _lines(text):
        cyc = tuple(_int(t, no) for t in toks)
        for v in cyc:
            if not 1 <= v <= g.n_vertices:
                raise OperatorIndexError(f"line {no}: vertex {v} out of range 1..{g.n_vertices}")
        cycles.append(cyc)
    return CycleBasis(g, tuple(cycles))


def serialize_cycle_basis(b: CycleBasis) -> str:
    return "".join(" ".join(str(v) for v in c) + "\n" for c in b.cycles)


# --------------------------------------------------------------------------
# Circuits

_GROUP = re.compile(r"\(([^()]*)\)")


def parse_circuit(text: str) -> Circuit:
    lines = _lines(text)
    no, toks = _header(lines, "circuit", "circuit")
    if len(toks) != 2:
        raise ParseError("header must be 'circuit <n_majoranas>'", no)
    n = _int(toks[1], no)
    layers = []
    for no, toks in lines:
        kind, rest = toks[0], " ".join(toks[1:])
        groups = _GROUP.findall(rest)
        if _GROUP.sub("", rest).strip():
            raise ParseError("gates must be parenthesized groups", no)
        if kind == "gaussian":
            rots = []
            for grp in groups:
                f = grp.split()
                if len(f) != 3:
                    raise ParseError("Gaussian rotation needs (k1 k2 w)", no)
                rots.append((_int(f[0], no), _int(f[1], no), _float(f[2], no)))
            layers.append(GaussianLayer(tuple(rots)))
        elif kind == "nongaussian":
            gates = []
            for grp in groups:
                f = grp.split()
                if len(f) not in (3, 5):
                    raise ParseError("non-Gaussian gate needs (k1 k2 omega) or (k1 k2 k3 k4 omega)", no)
                gates.append((tuple(_int(x, no) for x in f[:-1]), _float(f[-1], no)))
            try:
                layers.append(NonGaussianLayer(tuple(gates)))
            except ValueError as exc:
                raise ParseError(str(exc), no) from None
        else:
            raise ParseError(f"unknown layer kind {kind!r}", no)
    try:
        return Circuit(n, tuple(layers))
    except (DimensionError, ValueError) as exc:
        raise ParseError(str(exc), 1) from None


def serialize_circuit(c: Circuit) -> str:
    out = [f"circuit {c.n_majoranas}"]
    for layer in c.layers:
        if isinstance(layer, GaussianLayer):
            body = " ".join(f"({a} {b} {fmt_float(w)})" for a, b, w in layer.rotations)
            out.append(("gaussian " + body).rstrip())
        else:
            body = " ".join("(" + " ".join(str(k) for k in K) + f" {fmt_float(om)})" for K, om in layer.gates)
            out.append(("nongaussian " + body).rstrip())
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# Angles, distributions, reports


def parse_angles(text: str) -> tuple[list[float], list[float]]:
    """One ``theta phi`` pair per line, qubit 1 first."""
    thetas, phis = [], []
    for no, toks in _lines(text):
        if len(toks) != 2:
            raise ParseError("expected '<theta> <phi>'", no)
        thetas.append(_float(toks[0], no))
        phis.append(_float(toks[1], no))
    return thetas, phis


def serialize_angles(thetas: Sequence[float], phis: Sequence[float]) -> str:
    return "".join(f"{fmt_float(t)} {fmt_float(p)}\n" for t, p in zip(thetas, phis))


def serialize_distribution(p: DistributionTable) -> str:
    return "".join(f"{p.bitstring(s)} {fmt_float(v)}\n" for s, v in enumerate(p.probs))


def parse_distribution(text: str) -> DistributionTable:
    entries = {}
    n_bits = None
    for no, toks in _lines(text):
        if len(toks) != 2 or set(toks[0]) - {"0", "1"}:
            raise ParseError("expected '<bitstring> <probability>'", no)
        if n_bits is None:
            n_bits = len(toks[0])
        elif len(toks[0]) != n_bits:
            raise ParseError("bitstrings of different lengths", no)
        entries[int(toks[0], 2)] = _float(toks[1], no)
    if n_bits is None:
        raise ParseError("empty distribution", 1)
    probs = np.zeros(1 << n_bits)
    for s, v in entries.items():
        probs[s] = v
    try:
        return DistributionTable(n_bits, probs)
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None


def _bits_list(n_bits: int, strings) -> str:
    return " ".join(format(s, f"0{n_bits}b") for s in strings)


def serialize_spreadness(r: SpreadnessReport, spectrum: Sequence[float] | None = None) -> str:
    out = []
    if spectrum is not None:
        out.append("spectrum " + " ".join(fmt_float(x) for x in spectrum))
    out += [
        f"L {r.L}",
        f"mu_star {fmt_float(r.mu_star)}",
        f"witness_S1 {_bits_list(r.n_bits, r.witness_S1)}".rstrip(),
        f"witness_S2 {_bits_list(r.n_bits, r.witness_S2)}".rstrip(),
        f"method {r.method}",
    ]
    return "\n".join(out) + "\n"


def serialize_report(pairs: Sequence[tuple[str, object]]) -> str:
    def fmt(v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return fmt_float(v)
        if isinstance(v, (list, tuple, np.ndarray)):
            return " ".join(fmt(x) for x in v)
        if isinstance(v, np.floating):
            return fmt_float(float(v))
        return str(v)

    return "".join(f"{k} {fmt(v)}".rstrip() + "\n" for k, v in pairs)


def parse_report(text: str) -> dict[str, str]:
    out = {}
    for _, toks in _lines(text):
        out[toks[0]] = " ".join(toks[1:])
    return out


def serialize_cycle_report(r: CycleBasisReport) -> str:
    return "\n".join(r.lines()) + "\n"


__all__ = [
    "fmt_float",
    "parse_hamiltonian",
    "serialize_hamiltonian",
    "serialize_term_list",
    "term_line",
    "parse_graph",
    "serialize_graph",
    "parse_cycle_basis",
    "serialize_cycle_basis",
    "parse_circuit",
    "serialize_circuit",
    "parse_angles",
    "serialize_angles",
    "parse_distribution",
    "serialize_distribution",
    "serialize_spreadness",
    "serialize_report",
    "parse_report",
    "serialize_cycle_report",
]
