"""Exact algebra of Pauli strings, Majorana monomials and hybrid terms.

Conventions
-----------
* Qubits and Majoranas are 1-based.  Bit ``j - 1`` of a mask stands for
  qubit ``j`` (or Majorana ``c_j``).
* A :class:`PauliTerm` represents ``coeff * i**phase * prod_j X_j**x_j Z_j**z_j``
  with ``j`` ascending, so ``Y_j`` is ``x=z=1`` with ``phase=1``.
* A :class:`MajoranaTerm` represents ``coeff * C_K`` where
  ``C_K = i**(|K|(|K|-1)/2) c_k1 c_k2 ... c_k|K|`` is Hermitian.
* A :class:`HybridTerm` lives on ``n`` qubits plus ``n`` auxiliary Majoranas
  (``n/2`` modes); the two factors act on different tensor factors and
  commute.

All values are immutable; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from . import _kernels
from .errors import DimensionError, KindError, OperatorIndexError

IPOW = (1 + 0j, 1j, -1 + 0j, -1j)

_LETTER = {(1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


def _popcount(v: int) -> int:
    return v.bit_count()


def _bits(mask: int) -> Iterator[int]:
    """1-based positions of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def _tri(k: int) -> int:
    return k * (k - 1) // 2


def _clean(c) -> complex:
    c = complex(c)
    # adding +0.0 turns -0.0 into 0.0 so equal scalars print identically
    return complex(c.real + 0.0, c.imag + 0.0)


# --------------------------------------------------------------------------
# Pauli strings


@dataclass(frozen=True, eq=False)
class PauliTerm:
    n_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0
    coeff: complex = 1.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DimensionError("n_qubits must be positive")
        if (self.x | self.z) >> self.n_qubits or self.x < 0 or self.z < 0:
            raise OperatorIndexError("Pauli mask exceeds n_qubits")
        object.__setattr__(self, "phase", self.phase % 4)
        object.__setattr__(self, "coeff", _clean(self.coeff))

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliTerm":
        return cls(n_qubits, coeff=coeff)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str, coeff: complex = 1.0) -> "PauliTerm":
        if not 1 <= qubit <= n_qubits:
            raise OperatorIndexError(f"qubit {qubit} out of range 1..{n_qubits}")
        bit = 1 << (qubit - 1)
        letter = letter.upper()
        if letter == "I":
            return cls(n_qubits, coeff=coeff)
        if letter == "X":
            return cls(n_qubits, x=bit, coeff=coeff)
        if letter == "Z":
            return cls(n_qubits, z=bit, coeff=coeff)
        if letter == "Y":
            return cls(n_qubits, x=bit, z=bit, phase=1, coeff=coeff)
        raise ValueError(f"unknown Pauli letter {letter!r}")

    @classmethod
    def from_ops(cls, n_qubits: int, ops: Iterable[tuple[str, int]], coeff: complex = 1.0) -> "PauliTerm":
        """Ordered product of single-qubit Paulis, e.g. ``[("X", 1), ("Z", 1)]``."""
        out = cls(n_qubits, coeff=coeff)
        for letter, q in ops:
            out = pauli_mul(out, cls.single(n_qubits, q, letter))
        return out

    @property
    def scalar(self) -> complex:
        return self.coeff * IPOW[self.phase]

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(_bits(self.x | self.z))

    def is_identity(self) -> bool:
        return not (self.x | self.z)

    def letters(self) -> tuple[tuple[str, int], ...]:
        """Hermitian single-qubit letters on the support."""
        return tuple(
            (_LETTER[((self.x >> (q - 1)) & 1, (self.z >> (q - 1)) & 1)], q) for q in self.support
        )

    def hermitian_coeff(self) -> complex:
        """Coefficient in front of the Hermitian string ``prod letters()``.

        Uses ``X Z = -i Y`` on each qubit carrying both masks.
        """
        return _clean(self.scalar * IPOW[(-_popcount(self.x & self.z)) % 4])

    def with_coeff(self, coeff: complex) -> "PauliTerm":
        return PauliTerm(self.n_qubits, self.x, self.z, 0, coeff)

    def __eq__(self, other):
        if not isinstance(other, PauliTerm):
            return NotImplemented
        return (
            self.n_qubits == other.n_qubits
            and self.x == other.x
            and self.z == other.z
            and self.scalar == other.scalar
        )

    def __hash__(self):
        return hash((self.n_qubits, self.x, self.z, self.scalar))

    def __mul__(self, other):
        if isinstance(other, PauliTerm):
            return pauli_mul(self, other)
        if isinstance(other, (int, float, complex)):
            return PauliTerm(self.n_qubits, self.x, self.z, self.phase, self.coeff * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.__mul__(other)
        return NotImplemented

    def __repr__(self):
        ops = " ".join(f"{l}{q}" for l, q in self.letters()) or "I"
        return f"PauliTerm({self.hermitian_coeff()!r} * {ops}, n={self.n_qubits})"


def pauli_mul(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """Exact product ``a @ b``; moving ``Z^z_a`` past ``X^x_b`` costs ``(-1)^(z_a . x_b)``."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"Pauli sizes differ: {a.n_qubits} vs {b.n_qubits}")
    phase = a.phase + b.phase + 2 * _popcount(a.z & b.x)
    return PauliTerm(a.n_qubits, a.x ^ b.x, a.z ^ b.z, phase, a.coeff * b.coeff)


# --------------------------------------------------------------------------
# Majorana monomials


@dataclass(frozen=True, eq=False)
class MajoranaTerm:
    n_majoranas: int
    indices: tuple[int, ...] = ()
    coeff: complex = 1.0
    mask: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.n_majoranas < 2 or self.n_majoranas % 2:
            raise DimensionError("n_majoranas must be a positive even number")
        idx = tuple(int(k) for k in self.indices)
        mask = 0
        prev = 0
        for k in idx:
            if not 1 <= k <= self.n_majoranas:
                raise OperatorIndexError(f"Majorana index {k} out of range 1..{self.n_majoranas}")
            if k <= prev:
                raise ValueError("indices must be strictly increasing; use majorana_normalize")
            prev = k
            mask |= 1 << (k - 1)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "coeff", _clean(self.coeff))
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, n_majoranas: int, mask: int, coeff: complex = 1.0) -> "MajoranaTerm":
        if mask >> n_majoranas:
            raise OperatorIndexError("Majorana mask exceeds n_majoranas")
        return cls(n_majoranas, tuple(_bits(mask)), coeff)

    @classmethod
    def identity(cls, n_majoranas: int, coeff: complex = 1.0) -> "MajoranaTerm":
        return cls(n_majoranas, (), coeff)

    @property
    def weight(self) -> int:
        return len(self.indices)

    @property
    def support(self) -> tuple[int, ...]:
        return self.indices

    def is_identity(self) -> bool:
        return not self.indices

    def is_even(self) -> bool:
        return len(self.indices) % 2 == 0

    def with_coeff(self, coeff: complex) -> "MajoranaTerm":
        return MajoranaTerm(self.n_majoranas, self.indices, coeff)

    def __eq__(self, other):
        if not isinstance(other, MajoranaTerm):
            return NotImplemented
        return (self.n_majoranas, self.mask, self.coeff) == (other.n_majoranas, other.mask, other.coeff)

    def __hash__(self):
        return hash((self.n_majoranas, self.mask, self.coeff))

    def __mul__(self, other):
        if isinstance(other, MajoranaTerm):
            return majorana_mul(self, other)
        if isinstance(other, (int, float, complex)):
            return self.with_coeff(self.coeff * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.with_coeff(self.coeff * other)
        return NotImplemented

    def __repr__(self):
        ops = " ".join(f"c{k}" for k in self.indices) or "I"
        return f"MajoranaTerm({self.coeff!r} * C[{ops}], n={self.n_majoranas})"


def majorana_normalize(raw_indices: Sequence[int], raw_coeff: complex = 1.0, n_majoranas: int | None = None) -> MajoranaTerm:
    """Rewrite ``raw_coeff * c_r1 c_r2 ...`` as ``coeff * C_K``.

    Repeated indices are allowed and cancel in pairs.  ``n_majoranas``
    defaults to the smallest even size containing every index.
    """
    raw = [int(k) for k in raw_indices]
    if n_majoranas is None:
        top = max(raw, default=2)
        n_majoranas = top + (top % 2)
    for k in raw:
        if not 1 <= k <= n_majoranas:
            raise OperatorIndexError(f"Majorana index {k} out of range 1..{n_majoranas}")
    idx, sign = _kernels.sort_majorana(raw)
    # c_K (ordered) = i^(-|K|(|K|-1)/2) C_K
    coeff = complex(raw_coeff) * sign * IPOW[(-_tri(len(idx))) % 4]
    return MajoranaTerm(n_majoranas, idx, coeff)


def _majorana_sign(a_mask: int, b_mask: int) -> int:
    """Sign of reordering ``c_A c_B`` (both ascending) into ``c_{A xor B}``."""
    swaps = 0
    for k in _bits(b_mask):
        swaps += _popcount(a_mask >> k)
    return -1 if swaps & 1 else 1


def majorana_mask_product(a_mask: int, b_mask: int) -> tuple[int, complex]:
    """``C_A C_B = factor * C_{A xor B}``; returns ``(A xor B, factor)``."""
    c = a_mask ^ b_mask
    e = _tri(_popcount(a_mask)) + _tri(_popcount(b_mask)) - _tri(_popcount(c))
    return c, _majorana_sign(a_mask, b_mask) * IPOW[e % 4]


def majorana_mul(a: MajoranaTerm, b: MajoranaTerm) -> MajoranaTerm:
    if a.n_majoranas != b.n_majoranas:
        raise DimensionError(f"Majorana sizes differ: {a.n_majoranas} vs {b.n_majoranas}")
    c, factor = majorana_mask_product(a.mask, b.mask)
    return MajoranaTerm.from_mask(a.n_majoranas, c, a.coeff * b.coeff * factor)


# --------------------------------------------------------------------------
# Hybrid qubit x auxiliary-fermion terms


@dataclass(frozen=True, eq=False)
class HybridTerm:
    """``coeff * (pauli (x) majorana)``; the factors are stored with unit scalar."""

    n_qubits: int
    pauli: PauliTerm
    majorana: MajoranaTerm
    coeff: complex = 1.0

    def __post_init__(self):
        if self.n_qubits < 2 or self.n_qubits % 2:
            raise DimensionError("hybrid terms need an even, positive qubit count")
        if self.pauli.n_qubits != self.n_qubits or self.majorana.n_majoranas != self.n_qubits:
            raise DimensionError("hybrid factor sizes do not match n_qubits")
        scalar = _clean(complex(self.coeff) * self.pauli.scalar * self.majorana.coeff)
        object.__setattr__(self, "pauli", PauliTerm(self.n_qubits, self.pauli.x, self.pauli.z))
        object.__setattr__(self, "majorana", self.majorana.with_coeff(1.0))
        object.__setattr__(self, "coeff", scalar)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "HybridTerm":
        return cls(n_qubits, PauliTerm(n_qubits), MajoranaTerm(n_qubits), coeff)

    @classmethod
    def from_pauli(cls, p: PauliTerm) -> "HybridTerm":
        return cls(p.n_qubits, p, MajoranaTerm(p.n_qubits))

    @classmethod
    def from_majorana(cls, m: MajoranaTerm) -> "HybridTerm":
        return cls(m.n_majoranas, PauliTerm(m.n_majoranas), m)

    @property
    def weight(self) -> int:
        return self.pauli.weight + self.majorana.weight

    def is_identity(self) -> bool:
        return self.pauli.is_identity() and self.majorana.is_identity()

    def with_coeff(self, coeff: complex) -> "HybridTerm":
        return HybridTerm(self.n_qubits, self.pauli, self.majorana, coeff)

    def __eq__(self, other):
        if not isinstance(other, HybridTerm):
            return NotImplemented
        return (self.n_qubits, self.pauli.x, self.pauli.z, self.majorana.mask, self.coeff) == (
            other.n_qubits,
            other.pauli.x,
            other.pauli.z,
            other.majorana.mask,
            other.coeff,
        )

    def __hash__(self):
        return hash((self.n_qubits, self.pauli.x, self.pauli.z, self.majorana.mask, self.coeff))

    def __mul__(self, other):
        if isinstance(other, HybridTerm):
            return hybrid_mul(self, other)
        if isinstance(other, (int, float, complex)):
            return self.with_coeff(self.coeff * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.with_coeff(self.coeff * other)
        return NotImplemented

    def __repr__(self):
        ops = [f"{l}{q}" for l, q in self.pauli.letters()] + [f"c{k}" for k in self.majorana.indices]
        return f"HybridTerm({self.coeff!r} * {' '.join(ops) or 'I'}, n={self.n_qubits})"


def hybrid_mul(a: HybridTerm, b: HybridTerm) -> HybridTerm:
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"hybrid sizes differ: {a.n_qubits} vs {b.n_qubits}")
    return HybridTerm(a.n_qubits, pauli_mul(a.pauli, b.pauli), majorana_mul(a.majorana, b.majorana), a.coeff * b.coeff)


Term = Union[PauliTerm, MajoranaTerm, HybridTerm]
_TERM_TYPES = (PauliTerm, MajoranaTerm, HybridTerm)


def term_mul(a: Term, b: Term) -> Term:
    if type(a) is not type(b):
        raise KindError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    if isinstance(a, PauliTerm):
        return pauli_mul(a, b)  # type: ignore[arg-type]
    if isinstance(a, MajoranaTerm):
        return majorana_mul(a, b)  # type: ignore[arg-type]
    return hybrid_mul(a, b)  # type: ignore[arg-type]


def _pauli_anti(a: PauliTerm, b: PauliTerm) -> int:
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) & 1


def _majorana_anti(a_mask: int, b_mask: int) -> int:
    return (_popcount(a_mask) * _popcount(b_mask) - _popcount(a_mask & b_mask)) & 1


def commutes(a: Term, b: Term) -> bool:
    """True iff ``ab == ba``."""
    if type(a) is not type(b):
        raise KindError(f"cannot compare {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, PauliTerm):
        if a.n_qubits != b.n_qubits:
            raise DimensionError("Pauli sizes differ")
        return not _pauli_anti(a, b)  # type: ignore[arg-type]
    if isinstance(a, MajoranaTerm):
        if a.n_majoranas != b.n_majoranas:
            raise DimensionError("Majorana sizes differ")
        return not _majorana_anti(a.mask, b.mask)  # type: ignore[union-attr]
    if a.n_qubits != b.n_qubits:
        raise DimensionError("hybrid sizes differ")
    return not (_pauli_anti(a.pauli, b.pauli) ^ _majorana_anti(a.majorana.mask, b.majorana.mask))  # type: ignore[union-attr]


def weight(t: Term) -> int:
    return t.weight


# --------------------------------------------------------------------------
# Sums of terms

KINDS = ("pauli", "majorana", "hybrid")


def _kind_of(t: Term) -> str:
    if isinstance(t, PauliTerm):
        return "pauli"
    if isinstance(t, MajoranaTerm):
        return "majorana"
    if isinstance(t, HybridTerm):
        return "hybrid"
    raise KindError(f"not an operator term: {t!r}")


def _size_of(t: Term) -> int:
    return t.n_majoranas if isinstance(t, MajoranaTerm) else t.n_qubits


def _key_of(t: Term) -> tuple[tuple, complex]:
    if isinstance(t, PauliTerm):
        return (t.x, t.z), t.scalar
    if isinstance(t, MajoranaTerm):
        return (t.mask,), t.coeff
    return (t.pauli.x, t.pauli.z, t.majorana.mask), t.coeff


class OperatorSum:
    """Linear combination of terms of a single kind, with like terms merged.

    ``size`` is the qubit count for ``pauli`` and ``hybrid`` sums and the
    Majorana count for ``majorana`` sums.
    """

    __slots__ = ("kind", "size", "_terms")

    def __init__(self, kind: str, size: int, terms: Iterable[Term] = ()):
        if kind not in KINDS:
            raise KindError(f"unknown operator kind {kind!r}")
        self.kind = kind
        self.size = int(size)
        acc: dict[tuple, complex] = {}
        for t in terms:
            if _kind_of(t) != kind:
                raise KindError(f"{type(t).__name__} in a {kind} sum")
            if _size_of(t) != self.size:
                raise DimensionError(f"term size {_size_of(t)} in a sum of size {self.size}")
            key, c = _key_of(t)
            acc[key] = acc.get(key, 0j) + c
        self._terms = {k: _clean(c) for k, c in acc.items() if c != 0}

    @classmethod
    def _raw(cls, kind: str, size: int, data: dict[tuple, complex]) -> "OperatorSum":
        out = cls.__new__(cls)
        out.kind = kind
        out.size = size
        out._terms = {k: _clean(c) for k, c in data.items() if c != 0}
        return out

    @classmethod
    def from_terms(cls, terms: Sequence[Term]) -> "OperatorSum":
        if not terms:
            raise ValueError("use OperatorSum(kind, size) for an empty sum")
        return cls(_kind_of(terms[0]), _size_of(terms[0]), terms)

    @classmethod
    def identity(cls, kind: str, size: int, coeff: complex = 1.0) -> "OperatorSum":
        return cls._raw(kind, size, {cls._identity_key(kind): complex(coeff)})

    @staticmethod
    def _identity_key(kind: str) -> tuple:
        return {"pauli": (0, 0), "majorana": (0,), "hybrid": (0, 0, 0)}[kind]

    def _make(self, key: tuple, c: complex) -> Term:
        if self.kind == "pauli":
            return PauliTerm(self.size, key[0], key[1], 0, c)
        if self.kind == "majorana":
            return MajoranaTerm.from_mask(self.size, key[0], c)
        return HybridTerm(self.size, PauliTerm(self.size, key[0], key[1]), MajoranaTerm.from_mask(self.size, key[2]), c)

    def _sort_key(self, key: tuple):
        if self.kind == "pauli":
            t = PauliTerm(self.size, key[0], key[1])
            return (t.weight, tuple((q, l) for l, q in t.letters()))
        if self.kind == "majorana":
            idx = tuple(_bits(key[0]))
            return (len(idx), idx)
        t = PauliTerm(self.size, key[0], key[1])
        idx = tuple(_bits(key[2]))
        return (t.weight + len(idx), tuple((q, l) for l, q in t.letters()), idx)

    def terms(self) -> list[Term]:
        """Terms in canonical order: by weight, then by support."""
        return [self._make(k, self._terms[k]) for k in sorted(self._terms, key=self._sort_key)]

    def coefficient(self, t: Term) -> complex:
        """Coefficient of ``t``'s operator content (``t``'s own scalar ignored)."""
        return self._terms.get(_key_of(t)[0], 0j)

    def items(self) -> dict[tuple, complex]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: "OperatorSum"):
        if not isinstance(other, OperatorSum):
            raise KindError("expected an OperatorSum")
        if other.kind != self.kind:
            raise KindError(f"kind mismatch: {self.kind} vs {other.kind}")
        if other.size != self.size:
            raise DimensionError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other):
        if isinstance(other, _TERM_TYPES):
            other = OperatorSum(self.kind, self.size, [other])
        self._check(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0j) + c
        return OperatorSum._raw(self.kind, self.size, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other if isinstance(other, OperatorSum) else -1 * other)

    def scale(self, s: complex) -> "OperatorSum":
        return OperatorSum._raw(self.kind, self.size, {k: c * s for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        if isinstance(other, _TERM_TYPES):
            other = OperatorSum(self.kind, self.size, [other])
        self._check(other)
        out: list[Term] = []
        mine, theirs = self.terms(), other.terms()
        for a in mine:
            for b in theirs:
                out.append(term_mul(a, b))
        return OperatorSum(self.kind, self.size, out)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return (self.kind, self.size, self._terms) == (other.kind, other.size, other._terms)

    def __hash__(self):
        return hash((self.kind, self.size, frozenset(self._terms.items())))

    def allclose(self, other: "OperatorSum", atol: float = 1e-12) -> bool:
        self._check(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= atol for k in keys)

    def chop(self, atol: float) -> "OperatorSum":
        """Drop terms with ``|coeff| <= atol``."""
        return OperatorSum._raw(self.kind, self.size, {k: c for k, c in self._terms.items() if abs(c) > atol})

    def adjoint(self) -> "OperatorSum":
        acc = {}
        for k, c in self._terms.items():
            c = c.conjugate()
            if self.kind != "majorana" and _popcount(k[0] & k[1]) & 1:
                # (X^x Z^z)^dagger = Z^z X^x = (-1)^(x.z) X^x Z^z
                c = -c
            acc[k] = c
        return OperatorSum._raw(self.kind, self.size, acc)

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return self.allclose(self.adjoint(), atol)

    def map_terms(self, fn, kind: str, size: int) -> "OperatorSum":
        return OperatorSum(kind, size, [fn(t) for t in self.terms()])

    def __repr__(self):
        body = " + ".join(repr(t) for t in self.terms()) or "0"
        return f"OperatorSum[{self.kind}, {self.size}]({body})"


def _term_sites(t: Term) -> tuple:
    if isinstance(t, HybridTerm):
        return tuple(("q", q) for q in t.pauli.support) + tuple(("c", k) for k in t.majorana.support)
    return t.support


def opsum_locality(h: OperatorSum) -> int:
    """Largest term weight, 0 for an identity-only or empty sum."""
    return max((t.weight for t in h.terms()), default=0)


def opsum_sparsity(h: OperatorSum) -> int:
    """Largest number of terms touching a single qubit or Majorana."""
    counts: dict = {}
    for t in h.terms():
        for s in _term_sites(t):
            counts[s] = counts.get(s, 0) + 1
    return max(counts.values(), default=0)
