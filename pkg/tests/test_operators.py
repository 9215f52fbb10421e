import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rand_majorana, rand_pauli
from oracles import c_k, jw_majorana, majorana_word, pauli_string, symplectic

from fermnlts.errors import DimensionError, KindError, OperatorIndexError
from fermnlts.mappings import assimilate
from fermnlts.operators import (
    HybridTerm,
    MajoranaTerm,
    OperatorSum,
    PauliTerm,
    commutes,
    majorana_mask_product,
    majorana_mul,
    majorana_normalize,
    opsum_locality,
    opsum_sparsity,
    pauli_mul,
    weight,
)


def dense_p(t: PauliTerm):
    return symplectic(t.n_qubits, t.x, t.z, t.phase, t.coeff)


def dense_m(t: MajoranaTerm):
    return c_k(t.indices, t.n_majoranas // 2, t.coeff)


# --------------------------------------------------------------------------
# Pauli products


def test_x_times_z_is_minus_i_y():
    p = pauli_mul(PauliTerm.single(1, 1, "X"), PauliTerm.single(1, 1, "Z"))
    assert (p.x, p.z) == (1, 1)
    assert p.letters() == (("Y", 1),)
    assert p.hermitian_coeff() == -1j
    assert np.allclose(dense_p(p), -1j * pauli_string(1, [("Y", 1)]))


def test_identity_is_neutral(rng):
    for _ in range(20):
        p = rand_pauli(rng, 3)
        assert pauli_mul(PauliTerm.identity(3), p) == p
        assert pauli_mul(p, PauliTerm.identity(3)) == p


def test_two_qubit_product_against_matrices():
    a = PauliTerm.from_ops(2, [("X", 1), ("Z", 2)])
    b = PauliTerm.from_ops(2, [("Z", 1), ("X", 2)])
    prod = pauli_mul(a, b)
    oracle = pauli_string(2, [("X", 1), ("Z", 2)]) @ pauli_string(2, [("Z", 1), ("X", 2)])
    assert np.allclose(dense_p(prod), oracle)
    assert np.allclose(oracle, pauli_string(2, [("Y", 1), ("Y", 2)]))
    assert prod.letters() == (("Y", 1), ("Y", 2))
    assert prod.hermitian_coeff() == 1


def test_pauli_size_mismatch():
    with pytest.raises(DimensionError):
        pauli_mul(PauliTerm(2), PauliTerm(3))


def test_pauli_equality_uses_total_scalar():
    assert PauliTerm(1, 1, 1, phase=1, coeff=1) == PauliTerm(1, 1, 1, phase=0, coeff=1j)
    assert PauliTerm(1, 1, 1, phase=1) != PauliTerm(1, 1, 1, phase=3)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_pauli_associativity(n, seed):
    r = random.Random(seed)
    a, b, c = (rand_pauli(r, n) for _ in range(3))
    left, right = pauli_mul(pauli_mul(a, b), c), pauli_mul(a, pauli_mul(b, c))
    # integer phases carry exactly; only the float coefficients may round
    assert (left.x, left.z) == (right.x, right.z)
    assert abs(left.scalar - right.scalar) <= 1e-12 * max(1.0, abs(left.scalar))
    unit = [PauliTerm(n, t.x, t.z, t.phase) for t in (a, b, c)]
    assert pauli_mul(pauli_mul(unit[0], unit[1]), unit[2]) == pauli_mul(unit[0], pauli_mul(unit[1], unit[2]))


def test_pauli_product_matches_dense(rng):
    for n in range(1, 5):
        for _ in range(40):
            a, b = rand_pauli(rng, n), rand_pauli(rng, n)
            assert np.allclose(dense_p(pauli_mul(a, b)), dense_p(a) @ dense_p(b), atol=1e-12)


# --------------------------------------------------------------------------
# Majorana normalization and products


def test_normalize_swapped_pair():
    t = majorana_normalize((2, 1), 1.0)
    assert t.indices == (1, 2)
    assert t.coeff == 1j
    assert np.allclose(dense_m(t), majorana_word((2, 1), 1))


def test_normalize_square_cancels():
    t = majorana_normalize((3, 3), 5.0, 4)
    assert t.indices == () and t.coeff == 5


def test_normalize_four_ascending():
    t = majorana_normalize((1, 2, 3, 4), 1.0)
    assert t.indices == (1, 2, 3, 4)
    assert t.coeff == -1
    assert np.allclose(dense_m(t), majorana_word((1, 2, 3, 4), 2))


def test_normalize_out_of_range():
    with pytest.raises(OperatorIndexError):
        majorana_normalize((1, 7), 1.0, 6)
    with pytest.raises(OperatorIndexError):
        majorana_normalize((0, 1), 1.0, 6)


def test_majorana_term_requires_sorted():
    with pytest.raises(ValueError):
        MajoranaTerm(4, (2, 1))
    with pytest.raises(DimensionError):
        MajoranaTerm(3, (1,))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 10), max_size=12), st.integers(0, 2**32))
def test_normalize_matches_dense_and_is_idempotent(word, seed):
    r = random.Random(seed)
    c = complex(r.uniform(-1, 1), r.uniform(-1, 1))
    t = majorana_normalize(word, c, 10)
    assert np.allclose(dense_m(t), c * majorana_word(word, 5), atol=1e-12)
    # feeding C_K back in as a raw word reproduces it
    m = len(t.indices)
    again = majorana_normalize(t.indices, t.coeff * (1j) ** (m * (m - 1) // 2), 10)
    assert again == t


def test_unit_monomials_are_hermitian():
    r = random.Random(5)
    for n_maj in (2, 4, 8, 12):
        for _ in range(20):
            t = MajoranaTerm.from_mask(n_maj, r.getrandbits(n_maj))
            a = dense_m(t)
            assert np.max(np.abs(a - a.conj().T)) < 1e-12


def test_square_of_bilinear_is_identity():
    c12 = MajoranaTerm(2, (1, 2))
    out = majorana_mul(c12, c12)
    assert out.indices == () and out.coeff == 1


def test_edge_products_around_triangle():
    e = lambda i, j: majorana_normalize((2 * i, 2 * j), 1.0, 6)  # noqa: E731
    prod = majorana_mul(majorana_mul(e(1, 2), e(2, 3)), e(3, 1))
    assert prod.indices == () and prod.coeff == 1


def test_disjoint_bilinears_concatenate():
    prod = majorana_mul(MajoranaTerm(4, (1, 2)), MajoranaTerm(4, (3, 4)))
    assert np.allclose(dense_m(prod), c_k((1, 2), 2) @ c_k((3, 4), 2))
    assert prod.indices == (1, 2, 3, 4) and prod.coeff == 1


def test_majorana_size_mismatch():
    with pytest.raises(DimensionError):
        majorana_mul(MajoranaTerm(2), MajoranaTerm(4))


def test_majorana_product_matches_dense(rng):
    for n_maj in (2, 4, 6, 8):
        for _ in range(50):
            a, b = rand_majorana(rng, n_maj), rand_majorana(rng, n_maj)
            assert np.allclose(dense_m(majorana_mul(a, b)), dense_m(a) @ dense_m(b), atol=1e-12)


def test_mask_product_associative(rng):
    for _ in range(200):
        a, b, c = (rng.getrandbits(12) for _ in range(3))
        ab, f1 = majorana_mask_product(a, b)
        abc, f2 = majorana_mask_product(ab, c)
        bc, g1 = majorana_mask_product(b, c)
        abc2, g2 = majorana_mask_product(a, bc)
        assert abc == abc2 and f1 * f2 == g1 * g2


def test_anticommutation_relations_symbolic():
    n = 12
    for i in range(1, n + 1):
        ci = majorana_normalize((i,), 1.0, n)
        sq = majorana_mul(ci, ci)
        assert sq.indices == () and sq.coeff == 1
        for j in range(1, n + 1):
            if i != j:
                cj = majorana_normalize((j,), 1.0, n)
                assert majorana_mul(ci, cj) == majorana_mul(cj, ci) * -1


def test_jw_oracle_anticommutes():
    for i in range(1, 7):
        for j in range(1, 7):
            a, b = jw_majorana(i, 3), jw_majorana(j, 3)
            assert np.allclose(a @ b + b @ a, 2 * (i == j) * np.eye(8))


# --------------------------------------------------------------------------
# Commutation


def test_commutes_examples():
    assert not commutes(PauliTerm.single(1, 1, "X"), PauliTerm.single(1, 1, "Z"))
    assert commutes(MajoranaTerm(4, (1, 2)), MajoranaTerm(4, (3, 4)))
    v1 = majorana_normalize((1, 2), 1.0, 4)
    e12 = majorana_normalize((2, 4), 1.0, 4)
    assert not commutes(v1, e12)
    a, b = dense_m(v1), dense_m(e12)
    assert np.linalg.norm(a @ b - b @ a) > 1


def test_commutes_kind_mismatch():
    with pytest.raises(KindError):
        commutes(PauliTerm(2), MajoranaTerm(2))


def test_commutes_against_dense(rng):
    for _ in range(250):
        n = rng.randint(1, 6)
        a, b = rand_pauli(rng, n), rand_pauli(rng, n)
        da, db = dense_p(a), dense_p(b)
        assert commutes(a, b) == (np.linalg.norm(da @ db - db @ da) < 1e-12)
    for _ in range(250):
        n_maj = 2 * rng.randint(1, 6)
        a, b = rand_majorana(rng, n_maj), rand_majorana(rng, n_maj)
        da, db = dense_m(a), dense_m(b)
        assert commutes(a, b) == (np.linalg.norm(da @ db - db @ da) < 1e-12)


def test_hybrid_commutes_combines_factors():
    x1 = HybridTerm.from_pauli(PauliTerm.single(2, 1, "X"))
    z1 = HybridTerm.from_pauli(PauliTerm.single(2, 1, "Z"))
    c1 = HybridTerm.from_majorana(MajoranaTerm(2, (1,)))
    c2 = HybridTerm.from_majorana(MajoranaTerm(2, (2,)))
    assert not commutes(x1, z1)
    assert commutes(x1, c1)
    assert not commutes(c1, c2)
    both = HybridTerm(2, PauliTerm.single(2, 1, "X"), MajoranaTerm(2, (1,)))
    other = HybridTerm(2, PauliTerm.single(2, 1, "Z"), MajoranaTerm(2, (2,)))
    assert commutes(both, other)


# --------------------------------------------------------------------------
# Weight, locality, sparsity and sums


def test_locality_and_sparsity():
    h = OperatorSum(
        "pauli", 3, [PauliTerm.from_ops(3, [("Z", 1), ("Z", 2)]), PauliTerm.from_ops(3, [("Z", 2), ("Z", 3)])]
    )
    assert opsum_locality(h) == 2 and opsum_sparsity(h) == 2
    ident = OperatorSum.identity("pauli", 3)
    assert opsum_locality(ident) == 0 and opsum_sparsity(ident) == 0


def test_image_weight_doubles(rng):
    for _ in range(50):
        p = rand_pauli(rng, 4)
        assert weight(assimilate(p)) == 2 * weight(p)


def test_sum_merges_and_drops_zeros():
    z = PauliTerm.single(2, 1, "Z")
    h = OperatorSum("pauli", 2, [z, z.with_coeff(2.0), PauliTerm.single(2, 2, "X")])
    assert len(h) == 2 and h.coefficient(z) == 3
    h2 = h - OperatorSum("pauli", 2, [z.with_coeff(3.0)])
    assert len(h2) == 1


def test_sum_kind_and_size_checks():
    with pytest.raises(KindError):
        OperatorSum("pauli", 2, [MajoranaTerm(2)])
    with pytest.raises(DimensionError):
        OperatorSum("pauli", 2, [PauliTerm(3)])
    with pytest.raises(KindError):
        OperatorSum("pauli", 2) + OperatorSum("majorana", 2)


def test_sum_ordering_is_canonical():
    terms = [PauliTerm.from_ops(3, [("Z", 2), ("Z", 3)]), PauliTerm.single(3, 3, "X"), PauliTerm.identity(3)]
    h = OperatorSum("pauli", 3, terms)
    ordered = [t.letters() for t in h.terms()]
    assert ordered == [(), (("X", 3),), (("Z", 2), ("Z", 3))]
    assert OperatorSum("pauli", 3, terms[::-1]) == h


def test_adjoint_and_hermiticity(rng):
    for _ in range(30):
        terms = [rand_pauli(rng, 3) for _ in range(4)]
        h = OperatorSum("pauli", 3, terms)
        d = sum(dense_p(t) for t in terms)
        hd = sum(dense_p(t) for t in h.adjoint().terms())
        assert np.allclose(hd, d.conj().T)
        assert (h + h.adjoint()).is_hermitian()


def test_sum_product_matches_dense(rng):
    a = OperatorSum("majorana", 6, [rand_majorana(rng, 6) for _ in range(3)])
    b = OperatorSum("majorana", 6, [rand_majorana(rng, 6) for _ in range(3)])
    da = sum(dense_m(t) for t in a.terms())
    db = sum(dense_m(t) for t in b.terms())
    dab = sum(dense_m(t) for t in (a * b).terms())
    assert np.allclose(dab, da @ db)
