"""Evaluation codes from even-permutation-invariant polynomials over small
finite fields, with exhaustive verification machinery for their parameters,
zero-count bounds, fiber structure, and comparison tables.
"""

__version__ = "0.1.0"

from .gf import Field, FieldElement, field_from_order, field_new, parse_field_spec
from .mvpoly import MultiPoly, Permutation, exact_divide, is_invariant
from .sym import (
    AmInvariantPair,
    ComboType,
    SymCombo,
    SymComboClass,
    classify_sym_combo,
    decompose_am_invariant,
    elem_sym_poly,
    eval_all_elem_sym,
    isolate_variable,
    vandermonde_eval,
    vandermonde_poly,
)
from .perm import (
    DistinguishedSet,
    OrbitReps,
    PermGroup,
    alternating_group,
    am_orbit_reps,
    distinguished_count,
    is_even,
    iterate_distinguished,
    orbit_of,
    orbit_partition,
    sm_orbit_reps,
    subgroup_from_generators,
    symmetric_group,
)
from .codes import (
    CodeParams,
    EvalCode,
    MessageSpace,
    build_am_code,
    build_dj_code,
    codeword_weight,
    dependent_family_scan,
    dzero_count,
    encode,
    grm_params,
    min_distance,
    weight_from_zeros,
)
from .bounds import (
    BoundReport,
    FiberCensus,
    am_code_distance_bound,
    bound_report,
    compare_codes,
    compare_trend,
    dep_case_bound,
    indep_case_bound,
    main_bound,
    main_bound_applies,
    vm_fiber_census,
    weil_interval,
)

__all__ = [name for name in dir() if not name.startswith("_")]
