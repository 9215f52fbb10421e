import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from fermnlts.operators import HybridTerm, MajoranaTerm, PauliTerm  # noqa: E402


def rand_pauli(rng: random.Random, n: int, complex_coeff: bool = True) -> PauliTerm:
    c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2) if complex_coeff else 0.0)
    return PauliTerm(n, rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4), c)


def rand_majorana(rng: random.Random, n_maj: int, even: bool | None = None) -> MajoranaTerm:
    while True:
        mask = rng.getrandbits(n_maj)
        if even is None or (bin(mask).count("1") % 2 == 0) == even:
            break
    return MajoranaTerm.from_mask(n_maj, mask, complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))


def rand_hybrid(rng: random.Random, n: int) -> HybridTerm:
    return HybridTerm(n, rand_pauli(rng, n), rand_majorana(rng, n), complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))


@pytest.fixture
def rng():
    return random.Random(20261014)
