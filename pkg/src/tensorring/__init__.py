"""Exact workbench for tensor rings T_R(M) of nilpotent bimodules over F_p-algebras."""

from .exactlin import ExactMatrix, FieldSpec, inverse, kernel_basis, kron, rank, rref, solve
from .algebra import (
    FinDimAlgebra,
    MoritaData,
    QuiverPreset,
    ground_field,
    morita_ring,
    path_algebra,
    product_algebra,
    trivial_extension,
)
from .modules import (
    LEFT,
    RIGHT,
    FdBimodule,
    FdModule,
    ModuleHom,
    direct_sum,
    hom_space,
    is_isomorphic,
    k_dual,
    tensor_over_R,
)
from .homological import ext, minimal_projective_resolution, pd_bounded, simple_module, tor
from .tensor_ring import NotNilpotent, TensorRing, idempotent_bimodule, tensor_ring
from .pairs import (
    CoPairModule,
    PairModule,
    functor_C,
    functor_Coind,
    functor_Ind,
    functor_K,
    functor_S,
    functor_U,
    module_to_pair,
    pair_to_module,
    tensor_over_T,
)
from .gorenstein import (
    GorensteinVerdict,
    Window,
    check_condition_T,
    is_gf,
    is_gorenstein_projective,
    is_pgf,
)
from .verify import verify_cor_1_7, verify_lemma_1_6, verify_theorem_A, verify_theorem_B
from .quadruples import morita_setup, verify_section4
from .definition import DefinitionError, Workspace, preset_nakayama, preset_triangular

__version__ = "0.1.0"
