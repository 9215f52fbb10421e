"""Jordan-Wigner, Bravyi-Kitaev (Fenwick tree) and the qubit-assimilation map.

The assimilation map sends ``n`` qubits plus ``n/2`` auxiliary fermions
(Majoranas ``~c_1 .. ~c_n``) onto ``3n/2`` fermions with Majoranas
``c_{x,j}, c_{y,j}, c_{z,j}``::

    X_j  -> i c_{y,j} c_{z,j}
    Z_j  -> i c_{x,j} c_{y,j}
    ~c_j -> i c_{x,j} c_{y,j} c_{z,j}

and ``Y_j = i X_j Z_j -> i c_{x,j} c_{z,j}`` follows by multiplicativity.
The labels are laid out as ``c_{y,j} = c_{2j-1}``, ``c_{x,j} = c_{2j}``,
``c_{z,j} = c_{2n+j}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionError, KindError, OperatorIndexError
from .operators import (
    IPOW,
    HybridTerm,
    MajoranaTerm,
    OperatorSum,
    PauliTerm,
    _tri,
    hybrid_mul,
    majorana_mul,
    majorana_normalize,
    pauli_mul,
)

MAPPINGS = ("jw", "bk", "assimilate", "assimilate-inv")


def _check_index(k: int, n_modes: int):
    if n_modes < 1:
        raise DimensionError("n_modes must be positive")
    if not 1 <= k <= 2 * n_modes:
        raise OperatorIndexError(f"Majorana index {k} out of range 1..{2 * n_modes}")


def _mask(qubits) -> int:
    m = 0
    for q in qubits:
        m |= 1 << (q - 1)
    return m


# --------------------------------------------------------------------------
# Jordan-Wigner


def jordan_wigner(k: int, n_modes: int) -> PauliTerm:
    """``c_{2j-1} -> Z_1..Z_{j-1} X_j`` and ``c_{2j} -> Z_1..Z_{j-1} Y_j``."""
    _check_index(k, n_modes)
    j = (k + 1) // 2
    string = (1 << (j - 1)) - 1
    bit = 1 << (j - 1)
    if k % 2:
        return PauliTerm(n_modes, x=bit, z=string)
    # Z-string then Y_j = i X_j Z_j; Z_j commutes past nothing on qubit j
    return PauliTerm(n_modes, x=bit, z=string | bit, phase=1)


# --------------------------------------------------------------------------
# Bravyi-Kitaev on a Fenwick tree


def _lowbit(i: int) -> int:
    return i & -i


@lru_cache(maxsize=None)
def fenwick_sets(j: int, n_modes: int) -> tuple[frozenset, frozenset, frozenset]:
    """Update, parity and remainder qubit sets for mode ``j`` (1-based).

    Qubit ``q`` stores the parity of modes ``q - lowbit(q) + 1 .. q``.
    """
    if not 1 <= j <= n_modes:
        raise OperatorIndexError(f"mode {j} out of range 1..{n_modes}")
    update = set()
    q = j + _lowbit(j)
    while q <= n_modes:
        update.add(q)
        q += _lowbit(q)
    parity = set()
    q = j - 1
    while q > 0:
        parity.add(q)
        q -= _lowbit(q)
    flip = set()
    q = j - 1
    while q > j - _lowbit(j):
        flip.add(q)
        q -= _lowbit(q)
    return frozenset(update), frozenset(parity), frozenset(parity - flip)


def bravyi_kitaev(k: int, n_modes: int) -> PauliTerm:
    """``c_{2j-1} -> X_U X_j Z_P`` and ``c_{2j} -> X_U Y_j Z_R`` (Fenwick sets)."""
    _check_index(k, n_modes)
    j = (k + 1) // 2
    update, parity, remainder = fenwick_sets(j, n_modes)
    bit = 1 << (j - 1)
    xs = _mask(update) | bit
    if k % 2:
        return PauliTerm(n_modes, x=xs, z=_mask(parity))
    return PauliTerm(n_modes, x=xs, z=_mask(remainder) | bit, phase=1)


def _encode_majorana(t: MajoranaTerm, single) -> PauliTerm:
    if t.n_majoranas % 2:
        raise DimensionError("odd Majorana count")
    n_modes = t.n_majoranas // 2
    out = PauliTerm(n_modes, coeff=t.coeff * IPOW[_tri(t.weight) % 4])
    for k in t.indices:
        out = pauli_mul(out, single(k, n_modes))
    return out


def jw_term(t: MajoranaTerm) -> PauliTerm:
    return _encode_majorana(t, jordan_wigner)


def bk_term(t: MajoranaTerm) -> PauliTerm:
    return _encode_majorana(t, bravyi_kitaev)


# --------------------------------------------------------------------------
# Qubit assimilation


@dataclass(frozen=True)
class AssimilationLayout:
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 2 or self.n_qubits % 2:
            raise DimensionError("assimilation needs an even, positive qubit count")

    @property
    def n_majoranas(self) -> int:
        return 3 * self.n_qubits

    @property
    def n_modes(self) -> int:
        return 3 * self.n_qubits // 2

    def index_of(self, label: str, j: int) -> int:
        if not 1 <= j <= self.n_qubits:
            raise OperatorIndexError(f"qubit {j} out of range 1..{self.n_qubits}")
        if label == "y":
            return 2 * j - 1
        if label == "x":
            return 2 * j
        if label == "z":
            return 2 * self.n_qubits + j
        raise ValueError(f"unknown label {label!r}")

    def label_of(self, k: int) -> tuple[str, int]:
        n = self.n_qubits
        if not 1 <= k <= 3 * n:
            raise OperatorIndexError(f"Majorana index {k} out of range 1..{3 * n}")
        if k > 2 * n:
            return "z", k - 2 * n
        return ("y" if k % 2 else "x"), (k + 1) // 2


@lru_cache(maxsize=None)
def _generator_images(n: int):
    lay = AssimilationLayout(n)
    N = lay.n_majoranas
    x_img, z_img, c_img = {}, {}, {}
    for j in range(1, n + 1):
        cx, cy, cz = lay.index_of("x", j), lay.index_of("y", j), lay.index_of("z", j)
        x_img[j] = majorana_normalize((cy, cz), 1j, N)
        z_img[j] = majorana_normalize((cx, cy), 1j, N)
        c_img[j] = majorana_normalize((cx, cy, cz), 1j, N)
    return x_img, z_img, c_img


@lru_cache(maxsize=None)
def _inverse_images(n: int):
    lay = AssimilationLayout(n)
    out = {}
    for j in range(1, n + 1):
        ct = MajoranaTerm(n, (j,))
        for label, letter, sign in (("x", "X", 1), ("y", "Y", -1), ("z", "Z", 1)):
            out[lay.index_of(label, j)] = HybridTerm(n, PauliTerm.single(n, j, letter), ct, sign)
    return out


def assimilate(t, layout: AssimilationLayout | None = None) -> MajoranaTerm:
    """Image of a hybrid term (or a bare Pauli term, read as ``P (x) 1``)."""
    if isinstance(t, PauliTerm):
        t = HybridTerm.from_pauli(t)
    if not isinstance(t, HybridTerm):
        raise KindError(f"assimilate expects a HybridTerm or PauliTerm, got {type(t).__name__}")
    layout = layout or AssimilationLayout(t.n_qubits)
    if layout.n_qubits != t.n_qubits:
        raise DimensionError(f"layout for {layout.n_qubits} qubits, term on {t.n_qubits}")
    x_img, z_img, c_img = _generator_images(t.n_qubits)
    p, m = t.pauli, t.majorana
    out = MajoranaTerm(layout.n_majoranas, (), t.coeff * IPOW[p.phase])
    for j in range(1, t.n_qubits + 1):
        bit = 1 << (j - 1)
        if p.x & bit:
            out = majorana_mul(out, x_img[j])
        if p.z & bit:
            out = majorana_mul(out, z_img[j])
    if m.indices:
        out = out.with_coeff(out.coeff * m.coeff * IPOW[_tri(m.weight) % 4])
        for k in m.indices:
            out = majorana_mul(out, c_img[k])
    return out


def assimilate_inverse(t: MajoranaTerm, layout: AssimilationLayout | None = None) -> HybridTerm:
    if not isinstance(t, MajoranaTerm):
        raise KindError(f"assimilate_inverse expects a MajoranaTerm, got {type(t).__name__}")
    if layout is None:
        if t.n_majoranas % 6:
            raise DimensionError(f"{t.n_majoranas} Majoranas is not 3n for even n")
        layout = AssimilationLayout(t.n_majoranas // 3)
    if layout.n_majoranas != t.n_majoranas:
        raise DimensionError(f"layout for {layout.n_majoranas} Majoranas, term on {t.n_majoranas}")
    n = layout.n_qubits
    images = _inverse_images(n)
    out = HybridTerm.identity(n, t.coeff * IPOW[_tri(t.weight) % 4])
    for k in t.indices:
        out = hybrid_mul(out, images[k])
    return out


# --------------------------------------------------------------------------
# Whole sums


def map_opsum(mapping: str, h: OperatorSum) -> OperatorSum:
    """Term-by-term image of ``h`` under one of :data:`MAPPINGS`."""
    if mapping in ("jw", "bk"):
        if h.kind != "majorana":
            raise KindError(f"{mapping} maps Majorana sums, got {h.kind}")
        fn = jw_term if mapping == "jw" else bk_term
        return h.map_terms(fn, "pauli", h.size // 2)
    if mapping == "assimilate":
        if h.kind not in ("pauli", "hybrid"):
            raise KindError(f"assimilate maps pauli or hybrid sums, got {h.kind}")
        lay = AssimilationLayout(h.size)
        return h.map_terms(lambda t: assimilate(t, lay), "majorana", lay.n_majoranas)
    if mapping == "assimilate-inv":
        if h.kind != "majorana":
            raise KindError(f"assimilate-inv maps Majorana sums, got {h.kind}")
        if h.size % 6:
            raise DimensionError(f"{h.size} Majoranas is not 3n for even n")
        lay = AssimilationLayout(h.size // 3)
        return h.map_terms(lambda t: assimilate_inverse(t, lay), "hybrid", lay.n_qubits)
    raise KindError(f"unknown mapping {mapping!r}; choose from {', '.join(MAPPINGS)}")
