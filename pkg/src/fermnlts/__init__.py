"""Exact operator algebra for fermion/qubit mappings and fermionic NLTS checks."""

from . import _kernels
from .errors import FermNLTSError
from .graphs import CycleBasis, Graph, horton_mcb, localize, verify_cycle_basis
from .mappings import (
    AssimilationLayout,
    assimilate,
    assimilate_inverse,
    bravyi_kitaev,
    jordan_wigner,
    map_opsum,
)
from .nlts import (
    Circuit,
    DepthBoundInput,
    GaussianLayer,
    NonGaussianLayer,
    conjugate_term,
    construct_nlts,
    depth_lower_bound,
    lightcone_majorana_bound,
    max_weight_after,
)
from .operators import (
    HybridTerm,
    MajoranaTerm,
    OperatorSum,
    PauliTerm,
    commutes,
    majorana_mul,
    majorana_normalize,
    opsum_locality,
    opsum_sparsity,
    pauli_mul,
    weight,
)
from .superfast import edge_vertex_decompose, interaction_graph, superfast_encode

BACKEND = _kernels.BACKEND
__version__ = "0.1.0"
