"""Selmer structures, the transition process and Selmer reduction."""

from .reduction import (
    Degeneracy,
    ReductionResult,
    classify_degenerate,
    d_spaces,
    independent_differences,
    selmer_reduce,
    vanish_d_spaces,
)
from .structures import (
    SelmerGroup,
    SelmerStructure,
    baseline_structure,
    compute_selmer,
    decode_pair,
    encode_pair,
    restrict_group,
    sel2_of_twist,
    selmer2,
    unramified_subspace,
)
from .suitable import (
    IM_DELTA,
    L_TABLE,
    Z_TABLE,
    SignTable,
    SuitabilityReport,
    cascade_predict,
    required_pattern,
    sign_table_products,
    tautological_point,
    verify_suitable,
)
from .transition import (
    StepReport,
    TransitionChain,
    final_step_dim,
    run_chain,
    transition_step,
    twisted_condition,
)
