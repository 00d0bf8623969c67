"""Exact Sylvester rank functions over concrete rings.

Rank functions in all three equivalent facets (matrices, finitely presented
modules, maps between free modules), their bivariant extension to submodule
pairs, transport along ring homomorphisms and epimorphisms, direct-limit
dimensions, and a sofic span-formula oracle for finite-group algebras.  Every
computation is exact; all randomized verification is seed-reproducible.
"""

from .errors import (
    ParseError,
    PreconditionError,
    RingMismatch,
    SylrankError,
    UnsupportedRing,
)
from .groups import FiniteGroup, cyclic_group, group_from_table, make_group, symmetric_group_3
from .rings import (
    GroupAlgebraRing,
    IntegerRing,
    MatrixRing,
    PrimeFieldRing,
    Q,
    RationalField,
    ResidueRing,
    Ring,
    RingHom,
    Z,
    augmentation,
    compose,
    include_rationals,
    make_hom,
    reduce_between_quotients,
    reduce_mod,
    regular_embedding,
    residue_ring,
    ring_make,
)
from .matrices import (
    Matrix,
    amplification_embed,
    flatten_amplification,
    hom_apply,
    matrix_to_text,
    parse_matrix,
    regular_rep,
)
from .linalg import (
    SmithDecomposition,
    field_rank,
    kernel_capable,
    left_kernel,
    row_membership,
    smith,
)
from .fpmod import (
    FPMap,
    FPModule,
    Submodule,
    coker_presentation,
    direct_sum,
    map_welldefined,
    parse_module_file,
    parse_module_inline,
    quotient_by,
    submodule_equal,
    submodule_intersection,
    submodule_presentation,
    submodule_sum,
    tautological_map,
)
from .ranks import (
    MapRankFn,
    MatrixRankFn,
    ModuleRankFn,
    map_fn_from_module,
    map_rank_from_module,
    matrix_fn_round_trip,
    matrix_rank_from_map,
    module_dim,
    module_fn_from_matrix,
    parse_rank_fn,
    rk_convex,
    rk_field,
    rk_group_vn,
    rk_morita,
    rk_pullback,
    rk_zmod_pk,
)
from .sampler import RandomSampler
from .report import VerificationReport, canonical_json
from .checks import check_axioms, check_length_criterion
from .bivariant import (
    BivariantValue,
    bidim,
    check_bivariant_axioms,
    check_bivariant_properties,
    enumerate_submodules,
    ext_map_rank,
)
from .transport import (
    DirectedSystem,
    EpiRangeResult,
    LimitResult,
    OreResult,
    RModuleStructureOnS,
    augmentation_structure,
    constant_power_system,
    epi_range_test,
    injectivity_witness,
    limit_relative_dim,
    ore_localization_test,
    parse_epi,
    pullback_functoriality_check,
    pullback_restriction_check,
    pushforward,
    quotient_structure,
)
from .sofic import SoficApproximation, is_modular_case, sofic_bidim, sofic_vs_vn
from .values import INF, ExtVal, fmt_value, parse_value

__version__ = "0.1.0"
