"""Fermionic NLTS construction, layered fermionic circuits and depth bounds.

Gate conventions
----------------
* A Gaussian rotation ``(k1, k2, w)`` is ``exp(-w c_k1 c_k2)``; the indices
  may come in either order and swapping them negates ``w``.
* A non-Gaussian gate ``(K, omega)`` is ``exp(i omega C_K)`` with
  ``|K| in {2, 4}``; the gates of one layer act on disjoint ``K``.
* Layers are applied in list order, so ``U = L_last ... L_2 L_1``.  Inside a
  Gaussian layer the rotations are likewise applied in list order.

Both gate types are ``exp(theta G)`` with ``G`` a Majorana monomial squaring
to ``-1``; conjugating a monomial ``t`` that anticommutes with ``G`` gives
``U t U^dagger = (cos 2theta + sin 2theta G) t`` and leaves commuting
monomials alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import DegenerateInputError, DimensionError, KindError, OperatorIndexError, ParityError
from .mappings import AssimilationLayout, map_opsum
from .operators import MajoranaTerm, OperatorSum, _bits, majorana_mask_product, majorana_normalize

Rotation = tuple[int, int, float]
Gate = tuple[tuple[int, ...], float]


@dataclass(frozen=True)
class GaussianLayer:
    rotations: tuple[Rotation, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "rotations", tuple((int(a), int(b), float(w)) for a, b, w in self.rotations)
        )


@dataclass(frozen=True)
class NonGaussianLayer:
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        gates = []
        for K, omega in self.gates:
            K = tuple(int(k) for k in K)
            if len(K) not in (2, 4):
                raise ValueError(f"non-Gaussian gate support must have size 2 or 4, got {K}")
            if list(K) != sorted(set(K)):
                raise ValueError(f"gate support must be strictly increasing, got {K}")
            gates.append((K, float(omega)))
        seen: set[int] = set()
        for K, _ in gates:
            if seen & set(K):
                raise ValueError("gates of a non-Gaussian layer must act on disjoint sets")
            seen |= set(K)
        object.__setattr__(self, "gates", tuple(gates))


Layer = Union[GaussianLayer, NonGaussianLayer]


@dataclass(frozen=True)
class Circuit:
    """Layered fermionic circuit on ``n_majoranas`` Majoranas.

    ``n_system_majoranas`` optionally marks the leading Majoranas as the
    system; the rest are ancillas.
    """

    n_majoranas: int
    layers: tuple[Layer, ...] = ()
    n_system_majoranas: int | None = None

    def __post_init__(self):
        if self.n_majoranas < 2 or self.n_majoranas % 2:
            raise DimensionError("n_majoranas must be a positive even number")
        object.__setattr__(self, "layers", tuple(self.layers))
        for layer in self.layers:
            if isinstance(layer, GaussianLayer):
                ks = [k for a, b, _ in layer.rotations for k in (a, b)]
                if any(a == b for a, b, _ in layer.rotations):
                    raise ValueError("a Gaussian rotation needs two distinct Majoranas")
            elif isinstance(layer, NonGaussianLayer):
                ks = [k for K, _ in layer.gates for k in K]
            else:
                raise KindError(f"not a circuit layer: {layer!r}")
            for k in ks:
                if not 1 <= k <= self.n_majoranas:
                    raise OperatorIndexError(f"Majorana index {k} out of range 1..{self.n_majoranas}")
        if self.n_system_majoranas is not None and not 0 < self.n_system_majoranas <= self.n_majoranas:
            raise DimensionError("system size must lie in 1..n_majoranas")

    @property
    def depth(self) -> tuple[int, int]:
        """``(all layers, non-Gaussian layers)``: the plain and the Gaussian-free depth."""
        return len(self.layers), sum(isinstance(l, NonGaussianLayer) for l in self.layers)

    @property
    def ancilla_modes(self) -> int:
        if self.n_system_majoranas is None:
            return 0
        return (self.n_majoranas - self.n_system_majoranas) // 2

    def is_gaussian(self) -> bool:
        return all(isinstance(l, GaussianLayer) for l in self.layers)

    def then(self, other: "Circuit") -> "Circuit":
        if other.n_majoranas != self.n_majoranas:
            raise DimensionError("circuit sizes differ")
        return Circuit(self.n_majoranas, self.layers + other.layers, self.n_system_majoranas)


def gate_generators(layer: Layer, n_majoranas: int) -> list[tuple[int, complex, float]]:
    """Each gate as ``(mask, factor, theta)`` meaning ``exp(theta * factor * C_mask)``."""
    out = []
    if isinstance(layer, GaussianLayer):
        for a, b, w in layer.rotations:
            g = majorana_normalize((a, b), -1.0, n_majoranas)
            out.append((g.mask, g.coeff, w))
    else:
        for K, omega in layer.gates:
            g = MajoranaTerm(n_majoranas, K)
            out.append((g.mask, 1j, omega))
    return out


def _anticommute(a: int, b: int) -> bool:
    return bool((a.bit_count() * b.bit_count() - (a & b).bit_count()) & 1)


def _conjugate_dict(terms: dict[int, complex], circuit: Circuit, atol: float) -> dict[int, complex]:
    for layer in circuit.layers:
        for gmask, gfac, theta in gate_generators(layer, circuit.n_majoranas):
            c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
            nxt: dict[int, complex] = {}
            for m, a in terms.items():
                if not _anticommute(gmask, m):
                    nxt[m] = nxt.get(m, 0j) + a
                    continue
                nxt[m] = nxt.get(m, 0j) + a * c2
                prod, f = majorana_mask_product(gmask, m)
                nxt[prod] = nxt.get(prod, 0j) + a * s2 * gfac * f
            terms = {m: a for m, a in nxt.items() if abs(a) > atol}
    return terms


def conjugate_term(t: MajoranaTerm, circuit: Circuit, atol: float = 0.0) -> OperatorSum:
    """``U t U^dagger`` expanded exactly into Majorana monomials.

    Terms whose coefficient falls to ``|c| <= atol`` are dropped along the
    way (``atol=0`` keeps everything but exact cancellations).
    """
    if t.n_majoranas != circuit.n_majoranas:
        raise DimensionError(f"term on {t.n_majoranas} Majoranas, circuit on {circuit.n_majoranas}")
    out = _conjugate_dict({t.mask: t.coeff}, circuit, atol)
    return OperatorSum._raw("majorana", t.n_majoranas, {(m,): a for m, a in out.items()})


def conjugate_opsum(h: OperatorSum, circuit: Circuit, atol: float = 0.0) -> OperatorSum:
    if h.kind != "majorana":
        raise KindError("conjugation acts on Majorana sums")
    if h.size != circuit.n_majoranas:
        raise DimensionError("sum and circuit sizes differ")
    out = _conjugate_dict({k[0]: c for k, c in h.items().items()}, circuit, atol)
    return OperatorSum._raw("majorana", h.size, {(m,): a for m, a in out.items()})


def max_weight_after(t: MajoranaTerm, circuit: Circuit) -> int:
    return max((m.bit_count() for (m,) in conjugate_term(t, circuit).items()), default=0)


def weight_growth_bound(t: MajoranaTerm, circuit: Circuit) -> int:
    """``|K| * 3**T`` with ``T`` the number of non-Gaussian layers."""
    return t.weight * 3 ** circuit.depth[1]


# --------------------------------------------------------------------------
# Light cones


def backward_lightcone(circuit: Circuit, outputs: Iterable[int]) -> frozenset[int]:
    """Majoranas that can influence ``outputs`` through ``circuit``.

    Propagates the output set from the last layer to the first; a gate joins
    the cone whenever its support meets it.
    """
    cone = set(outputs)
    for layer in reversed(circuit.layers):
        if isinstance(layer, GaussianLayer):
            for a, b, _ in reversed(layer.rotations):
                if a in cone or b in cone:
                    cone.update((a, b))
        else:
            touched = [K for K, _ in layer.gates if cone.intersection(K)]
            for K in touched:
                cone.update(K)
    return frozenset(cone)


def lightcone_majorana_bound(n: int, T: int) -> int:
    """Size bound ``3 n 4**T`` on the backward cone of ``3n`` Majoranas."""
    if n < 1 or T < 0:
        raise ValueError("need n >= 1 and T >= 0")
    return 3 * n * 4**T


# --------------------------------------------------------------------------
# Depth lower bound


@dataclass(frozen=True)
class DepthBoundInput:
    l: int
    m: int
    L: float
    mu: float

    def __post_init__(self):
        if self.l < 1 or self.m < 0 or self.L < 0:
            raise ValueError("need l >= 1, m >= 0, L >= 0")
        if not 0 < self.mu <= 1:
            raise ValueError("mu must lie in (0, 1]")


@dataclass(frozen=True)
class DepthBound:
    value: float
    unclamped: float
    clamped: bool
    log: str = "natural"


def depth_lower_bound(inp: DepthBoundInput) -> DepthBound:
    """``max(0, 1/2 log_3(L^2 / (1600 (l+m) ln(1/mu))))``."""
    if inp.mu == 1:
        raise DegenerateInputError("mu = 1 makes ln(1/mu) vanish; the bound is undefined")
    if inp.L == 0:
        return DepthBound(0.0, -math.inf, True)
    ratio = inp.L**2 / (1600 * (inp.l + inp.m) * math.log(1 / inp.mu))
    raw = 0.5 * math.log(ratio) / math.log(3)
    return DepthBound(max(0.0, raw), raw, raw < 0)


# --------------------------------------------------------------------------
# Construction


def construct_nlts(hq: OperatorSum) -> OperatorSum:
    """Replace every Pauli by its Majorana bilinear (``H_q (x) 1`` assimilated)."""
    if hq.kind != "pauli":
        raise KindError(f"construct_nlts expects a Pauli sum, got {hq.kind}")
    if hq.size % 2:
        raise ParityError(f"qubit count {hq.size} is odd; pad with an idle qubit")
    return map_opsum("assimilate", hq)


def assimilated_rotation_circuit(thetas: Sequence[float], phis: Sequence[float]) -> Circuit:
    """Gaussian image of ``R = prod_j exp(i theta_j/2 (sin phi_j X_j - cos phi_j Y_j))``.

    Uses ``R_j = e^{-i psi Z/2} e^{i theta X/2} e^{i psi Z/2}`` with
    ``psi = phi - pi/2`` and ``exp(i a P) -> exp(-a c_p c_q)`` for
    ``P -> i c_p c_q``.
    """
    if len(thetas) != len(phis):
        raise DimensionError("need one phi per theta")
    lay = AssimilationLayout(len(thetas))
    rots: list[Rotation] = []
    for j, (theta, phi) in enumerate(zip(thetas, phis), start=1):
        cx, cy, cz = lay.index_of("x", j), lay.index_of("y", j), lay.index_of("z", j)
        psi = phi - math.pi / 2
        rots += [(cx, cy, psi / 2), (cy, cz, theta / 2), (cx, cy, -psi / 2)]
    return Circuit(lay.n_majoranas, (GaussianLayer(tuple(rots)),))


def random_circuit(
    n_majoranas: int,
    depth: int,
    rng: random.Random,
    gaussian: bool = False,
    fill: float = 1.0,
) -> Circuit:
    """Random layered circuit for tests and demos.

    Non-Gaussian layers tile a random permutation with blocks of size 2 or
    4; ``fill`` is the fraction of Majoranas covered.  With ``gaussian`` the
    layers are random rotation lists instead.
    """
    layers: list[Layer] = []
    for _ in range(depth):
        order = list(range(1, n_majoranas + 1))
        rng.shuffle(order)
        order = order[: int(round(fill * n_majoranas))]
        if gaussian:
            rots = []
            for _ in range(max(1, len(order) // 2)):
                a, b = rng.sample(range(1, n_majoranas + 1), 2)
                rots.append((a, b, rng.uniform(-math.pi, math.pi)))
            layers.append(GaussianLayer(tuple(rots)))
            continue
        gates = []
        i = 0
        while i + 2 <= len(order):
            size = 4 if i + 4 <= len(order) and rng.random() < 0.7 else 2
            gates.append((tuple(sorted(order[i : i + size])), rng.uniform(-math.pi, math.pi)))
            i += size
        layers.append(NonGaussianLayer(tuple(gates)))
    return Circuit(n_majoranas, tuple(layers))


__all__ = [
    "GaussianLayer",
    "NonGaussianLayer",
    "Circuit",
    "gate_generators",
    "conjugate_term",
    "conjugate_opsum",
    "max_weight_after",
    "weight_growth_bound",
    "backward_lightcone",
    "lightcone_majorana_bound",
    "DepthBoundInput",
    "DepthBound",
    "depth_lower_bound",
    "construct_nlts",
    "assimilated_rotation_circuit",
    "random_circuit",
]
