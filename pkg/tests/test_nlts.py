import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import c_k

from fermnlts.errors import DegenerateInputError, DimensionError, KindError, OperatorIndexError, ParityError
from fermnlts.exemplars import repetition_hamiltonian
from fermnlts.mappings import AssimilationLayout
from fermnlts.nlts import (
    Circuit,
    DepthBoundInput,
    GaussianLayer,
    NonGaussianLayer,
    backward_lightcone,
    conjugate_opsum,
    conjugate_term,
    construct_nlts,
    depth_lower_bound,
    gate_generators,
    lightcone_majorana_bound,
    max_weight_after,
    random_circuit,
    weight_growth_bound,
)
from fermnlts.operators import MajoranaTerm, OperatorSum, PauliTerm, majorana_normalize
from fermnlts.verify import circuit_unitary, dense_majorana, dense_majorana_term


def expm_antihermitian(a):
    # exp(a) for anti-Hermitian a through the Hermitian matrix -i a
    w, v = np.linalg.eigh(-1j * a)
    return (v * np.exp(1j * w)) @ v.conj().T


# --------------------------------------------------------------------------
# Construction


def test_construct_repetition_n2():
    h = construct_nlts(repetition_hamiltonian(2))
    assert h.kind == "majorana" and h.size == 6
    lay = AssimilationLayout(2)
    zz = majorana_normalize((lay.index_of("x", 1), lay.index_of("y", 1)), 1j, 6) * majorana_normalize(
        (lay.index_of("x", 2), lay.index_of("y", 2)), 1j, 6
    )
    ref = OperatorSum("majorana", 6, [MajoranaTerm.identity(6, 0.5), zz.with_coeff(-0.5 * zz.coeff)])
    assert h.allclose(ref)
    assert h.is_hermitian()


def test_construct_errors():
    with pytest.raises(ParityError):
        construct_nlts(repetition_hamiltonian(3))
    with pytest.raises(KindError):
        construct_nlts(OperatorSum("majorana", 4))


def test_construct_doubles_locality():
    h = construct_nlts(repetition_hamiltonian(6))
    assert max(t.weight for t in h.terms()) == 4
    assert len(h) == 1 + 5


# --------------------------------------------------------------------------
# Circuit validation


def test_layer_validation():
    with pytest.raises(ValueError):
        NonGaussianLayer((((1, 2, 3), 0.1),))
    with pytest.raises(ValueError):
        NonGaussianLayer((((2, 1), 0.1),))
    with pytest.raises(ValueError):
        NonGaussianLayer((((1, 2), 0.1), ((2, 3), 0.1)))
    with pytest.raises(ValueError):
        Circuit(4, (GaussianLayer(((1, 1, 0.3),)),))
    with pytest.raises(OperatorIndexError):
        Circuit(4, (NonGaussianLayer((((3, 5), 0.1),)),))
    with pytest.raises(DimensionError):
        Circuit(5, ())
    with pytest.raises(KindError):
        Circuit(4, ("layer",))


def test_depth_and_ancillas():
    c = Circuit(
        8,
        (GaussianLayer(((1, 2, 0.1),)), NonGaussianLayer((((1, 2, 3, 4), 0.2),)), GaussianLayer(())),
        n_system_majoranas=4,
    )
    assert c.depth == (3, 1)
    assert c.ancilla_modes == 2
    assert not c.is_gaussian()
    assert c.then(c).depth == (6, 2)
    with pytest.raises(DimensionError):
        c.then(Circuit(4, ()))


def test_gate_unitaries_match_matrix_exponential(rng):
    for _ in range(20):
        c = random_circuit(6, 1, rng, gaussian=rng.random() < 0.5)
        u = np.eye(8, dtype=complex)
        for mask, fac, theta in gate_generators(c.layers[0], 6):
            g = dense_majorana_term(MajoranaTerm.from_mask(6, mask, fac))
            assert np.allclose(g @ g, -np.eye(8))
            u = expm_antihermitian(theta * g) @ u
        assert np.allclose(u, circuit_unitary(c), atol=1e-12)


def test_gaussian_rotation_convention():
    # exp(-w c_1 c_2): the (2, 1, -w) spelling is the same gate
    a = circuit_unitary(Circuit(4, (GaussianLayer(((1, 2, 0.4),)),)))
    b = circuit_unitary(Circuit(4, (GaussianLayer(((2, 1, -0.4),)),)))
    ref = expm_antihermitian(-0.4 * c_k((1,), 2) @ c_k((2,), 2))
    assert np.allclose(a, ref) and np.allclose(b, ref)
    g = c_k((1, 2, 3, 4), 2)
    ng = circuit_unitary(Circuit(4, (NonGaussianLayer((((1, 2, 3, 4), 0.7),)),)))
    assert np.allclose(ng, expm_antihermitian(1j * 0.7 * g))


# --------------------------------------------------------------------------
# Conjugation


def test_conjugation_matches_dense(rng):
    for _ in range(25):
        c = random_circuit(6, rng.randint(1, 3), rng, gaussian=rng.random() < 0.4, fill=rng.choice([0.5, 1.0]))
        u = circuit_unitary(c)
        t = MajoranaTerm.from_mask(6, rng.getrandbits(6), complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        lhs = dense_majorana(conjugate_term(t, c))
        assert np.allclose(lhs, u @ dense_majorana_term(t) @ u.conj().T, atol=1e-12)


def test_conjugate_opsum_linear(rng):
    c = random_circuit(8, 2, rng)
    terms = [MajoranaTerm.from_mask(8, rng.getrandbits(8), rng.uniform(-1, 1)) for _ in range(5)]
    h = OperatorSum("majorana", 8, terms)
    total = OperatorSum("majorana", 8)
    for t in h.terms():
        total = total + conjugate_term(t, c)
    assert conjugate_opsum(h, c).allclose(total)
    with pytest.raises(KindError):
        conjugate_opsum(OperatorSum("pauli", 4), c)
    with pytest.raises(DimensionError):
        conjugate_term(MajoranaTerm(6, (1,)), c)


def test_identity_and_commuting_terms_are_fixed():
    c = Circuit(6, (NonGaussianLayer((((1, 2, 3, 4), 0.3),)), GaussianLayer(((5, 6, 0.2),))))
    assert conjugate_term(MajoranaTerm.identity(6, 2.0), c).allclose(OperatorSum("majorana", 6, [MajoranaTerm.identity(6, 2.0)]))
    t = MajoranaTerm(6, (1, 2, 5, 6), 1.5)
    assert conjugate_term(t, c).allclose(OperatorSum("majorana", 6, [t]))


@settings(max_examples=500, deadline=None)
@given(st.integers(0, 2**32))
def test_gaussian_conjugation_preserves_weight(seed):
    r = random.Random(seed)
    n = r.choice([4, 8, 12])
    c = random_circuit(n, r.randint(1, 2), r, gaussian=True)
    t = MajoranaTerm.from_mask(n, r.getrandbits(n))
    out = conjugate_term(t, c)
    assert {m.bit_count() for (m,) in out.items()} <= {t.weight}


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_one_nongaussian_layer_at_most_triples_weight(seed):
    r = random.Random(seed)
    n = r.choice([8, 12, 16, 24])
    c = random_circuit(n, 1, r, fill=r.choice([0.5, 1.0]))
    t = MajoranaTerm.from_mask(n, r.getrandbits(n) & r.getrandbits(n))
    if t.weight == 0:
        return
    assert max_weight_after(t, c) <= weight_growth_bound(t, c) == 3 * t.weight


def test_single_gate_reaches_factor_three():
    c = Circuit(8, (NonGaussianLayer((((1, 2, 3, 4), 0.3), ((5, 6, 7, 8), 0.4))),))
    t = MajoranaTerm(8, (1, 5))
    assert max_weight_after(t, c) == 6


# --------------------------------------------------------------------------
# Light cones


def test_lightcone_example():
    c = Circuit(8, (NonGaussianLayer((((1, 2, 3, 4), 0.1),)), NonGaussianLayer((((4, 5), 0.1), ((7, 8), 0.1)))))
    assert backward_lightcone(c, [5]) == {1, 2, 3, 4, 5}
    assert backward_lightcone(c, [6]) == {6}
    assert lightcone_majorana_bound(2, 3) == 6 * 64
    with pytest.raises(ValueError):
        lightcone_majorana_bound(0, 1)


def test_lightcone_contains_conjugated_support(rng):
    for _ in range(30):
        c = random_circuit(10, rng.randint(1, 3), rng)
        t = MajoranaTerm(10, tuple(sorted(rng.sample(range(1, 11), 2))))
        cone = backward_lightcone(Circuit(10, tuple(reversed(c.layers))), t.indices)
        for (m,) in conjugate_term(t, c).items():
            assert set(MajoranaTerm.from_mask(10, m).indices) <= cone


def test_lightcone_bound_random(rng):
    for _ in range(100):
        T = rng.randint(0, 5)
        n = rng.randint(1, 3)
        c = random_circuit(400, T, rng, fill=rng.choice([0.7, 1.0]))
        outputs = rng.sample(range(1, 401), 3 * n)
        assert len(backward_lightcone(c, outputs)) <= lightcone_majorana_bound(n, T)


# --------------------------------------------------------------------------
# Depth bound


def hand_value(l, m, L, mu):
    return max(0.0, 0.5 * math.log(L * L / (1600 * (l + m) * math.log(1 / mu)), 3))


def test_depth_bound_hand_values():
    b = depth_lower_bound(DepthBoundInput(100, 0, 3000, 0.9))
    assert abs(b.value - 2.858230074966061) < 1e-12
    assert not b.clamped and b.log == "natural"
    for args in [(10, 5, 4000, 0.5), (1, 0, 100, 0.1), (50, 50, 1e5, 0.99)]:
        assert abs(depth_lower_bound(DepthBoundInput(*args)).value - hand_value(*args)) < 1e-12


def test_depth_bound_clamps():
    b = depth_lower_bound(DepthBoundInput(100, 10, 10, 0.5))
    assert b.value == 0 and b.clamped and b.unclamped < 0
    z = depth_lower_bound(DepthBoundInput(5, 0, 0, 0.5))
    assert z.value == 0 and z.clamped


def test_depth_bound_errors():
    with pytest.raises(DegenerateInputError):
        depth_lower_bound(DepthBoundInput(1, 0, 10, 1.0))
    with pytest.raises(ValueError):
        DepthBoundInput(0, 0, 10, 0.5)
    with pytest.raises(ValueError):
        DepthBoundInput(1, 0, 10, 0.0)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 1000), st.integers(0, 1000), st.floats(1.0, 1e8), st.floats(1e-6, 0.999))
def test_depth_bound_doubling_shift(l, m, L, mu):
    a, b = depth_lower_bound(DepthBoundInput(l, m, L, mu)), depth_lower_bound(DepthBoundInput(l, m, 2 * L, mu))
    assert abs(b.unclamped - a.unclamped - math.log(2, 3)) < 1e-12
    assert b.value >= a.value
