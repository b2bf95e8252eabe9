"""Exact tools for T-systems: polynomial-matrix data, their mutation
loops, cluster-algebraic evolution, finiteness tests, dilogarithm
invariants, and partition q-series."""

from .analytic import (
    DilogInvariant,
    NahmSolution,
    c_alpha,
    dilog,
    nahm_functional,
    nahm_solve,
    recognize_rational,
    rogers_L,
)
from .cluster import (
    ExchangeMatrix,
    LoopAnalysis,
    LoopCheck,
    LoopError,
    MLaurent,
    MutationLoop,
    Seed,
    analyze_loop,
    matrix_to_dot,
    mutate_block,
    mutate_matrix,
    mutate_seed,
    mutate_seed_block,
    seed_to_dot,
    verify_loop,
)
from .correspondence import (
    BuiltLoop,
    DualityCheck,
    build_loop,
    canonical_vertex_map,
    datum_to_loop,
    extract_tdatum,
    loop_to_datum,
    loops_equal,
    relabel_loop,
    t_triple,
    verify_duality,
    y_triple,
)
from .dynamics import (
    LoopEvolution,
    PeriodReport,
    TropicalSolution,
    detect_period,
    evolve_T,
    evolve_T_backward,
    evolve_Y,
    evolve_datum_Y,
    initial_cluster,
    principal_coefficients,
    trivial_coefficients,
    tropical_T,
    unit_cluster,
)
from .laurent import (
    LaurentPoly,
    PolyMatrix,
    RationalMatrix,
    parse_laurent,
    z_integer,
)
from .positivity import (
    PositivityReport,
    QuadraticForm,
    compute_K,
    evaluated_pair,
    is_cartan_like,
    quadratic_form,
    simultaneous_positivity,
)
from .qseries import (
    QExpansion,
    SectorGroup,
    andrew_gordon_oracle,
    andrew_gordon_series,
    dedekind_eta,
    eta_product,
    eta_theta_oracle,
    partition_series,
    sector_group,
    sector_series,
    smith_normal_form,
    theta_sum,
    total_series,
)
from .semifield import (
    GroupRingElement,
    TRIVIAL_ONE,
    TropicalElement,
    TropicalValue,
    TrivialValue,
    hensel_pair,
)
from .tdatum import (
    ConsistentSubset,
    TDatum,
    TDatumError,
    apply_permutation,
    build_affinization,
    build_cartan_pair,
    build_size1,
    build_tadpole,
    build_tensor,
    cartan_matrix,
    decompose,
    direct_sum,
    dual_coeff,
    dump_json,
    find_equivalence,
    from_json_dict,
    langlands_dual,
    load_json,
    permute_subset,
    size1_coefficients,
    to_json_dict,
    two_identity,
    validate,
    validate_consistent,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
