"""Partial group algebras of finite groups, built as groupoid algebras."""

from .decomp import (
    Block,
    CharacterDegreeProfile,
    Comparison,
    StructuralDecomposition,
    WedderburnProfile,
    beta_m,
    center_dimension,
    closed_form,
    compare_decompositions,
    decompose_direct,
    decompose_formula,
    degree_profile,
    dim_partial_algebra,
    gamma_m,
    multiplicity_formula,
    signature,
    wedderburn_expand,
)
from .errors import (
    AmbiguousDegrees,
    BoundExceeded,
    ComputationError,
    InputError,
    InvalidInput,
    NotAPartialRep,
    PargroupError,
    PreconditionViolated,
)
from .groupoid import (
    AlgebraElement,
    Arrow,
    PartialGroupoid,
    all_arrows,
    arrow_compose,
    arrow_from_lambdas,
    build_groupoid,
    lambda_par,
    left_regular_matrix,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    commutator_subgroup,
    conjugacy_classes,
    group_abelian,
    group_cyclic,
    group_dicyclic,
    group_dihedral,
    group_direct_product,
    group_from_permutations,
    group_from_table,
    group_metacyclic_pair,
    dumps_mtab,
    loads_mtab,
    normalizer,
    right_cosets,
    stabilizer_of_subset,
)
from .lattice import SubgroupLattice, subgroup_lattice
from .parrep import (
    PartialRep,
    ProjectionFamily,
    extend_by_zero,
    invariant_inner_product,
    lift,
    projection_family,
    verify_partial_rep,
)
from .survey import AbelianType, SurveyReport, counterexample_run, enumerate_abelian, theorem_check
from .zoo import zoo, zoo_group

__version__ = "0.1.0"
