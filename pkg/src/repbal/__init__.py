"""Equal-representation partitions of the naturals minus one arithmetic progression.

Library layout: ``intset`` (bounded bit-mask sets), ``builders`` (named set
families), ``repfn`` (two-element-sum counting), ``solver`` (forced extension
and grid classification), ``verify`` (identity checkers and the suite),
``cli`` (command-line front door).
"""

from .builders import (
    FAMILIES,
    S1T1,
    S1T1_SHIFTED,
    S2T2,
    AmbiguousParityError,
    ParityBuildReport,
    WeightSequence,
    build_ef,
    build_evil_odious,
    build_family,
    build_parity_sets,
    build_xy,
    family_progression,
)
from .intset import (
    BoundedSet,
    OutOfWindowError,
    ProgressionSpec,
    digit_sum_2,
    progression_set,
)
from .repfn import (
    RepProfile,
    r1,
    r1_profile,
    r2,
    r2_prefix,
    r2_profile,
    r2_profile_naive,
    r3,
    r3_profile,
    r_cross,
)
from .solver import (
    STATUS_COMPLETED,
    STATUS_CONTRADICTION,
    ClassificationRecord,
    ExtensionOutcome,
    FamilyMatch,
    classify_grid,
    forced_extend,
    forced_extend_naive,
    match_family,
    predicted_solvable_cells,
)
from .verify import (
    CHECK_IDS,
    FourTermInstance,
    InstanceError,
    SuiteReport,
    check_four_term,
    check_step_identity,
    evil_odious_instances,
    four_term_residual,
    run_suite,
    step_identity_residual,
    validate_four_term,
    window_pair_instances,
)

__version__ = "0.1.0"
