"""Bass functions and subcategory classifiers on finite posets."""

__version__ = "0.1.0"

from .depth import INF, Depth
from .poset import (
    PosetError,
    SpectralPoset,
    StructureReport,
    UnknownElementError,
    cov_closure,
    emit_dot,
    height,
    is_saturated,
    is_specialization_closed,
    leq,
    load_poset,
    rel_height,
    rel_height_in_subset,
    structure_report,
    up_closure,
)
from .functions import (
    BassError,
    BassFunction,
    BassReport,
    SpecFunction,
    Violation,
    constant,
    enumerate_n_bass,
    f_of_subset,
    g_of_assh_subset,
    height_function,
    join_min,
    subset_of_one_bass,
    validate_bass,
)
from .sequences import (
    BassSequence,
    TwoBassPair,
    fct_from_seq,
    seq_from_fct,
    smallest_ke_pair,
    validate_pair,
    validate_sequence,
)
from .profiles import (
    S1,
    S2,
    DepthProfile,
    WitnessGenerator,
    WitnessUnavailable,
    a_n_set,
    check_condition_f,
    condition_f_failure,
    deform_depth,
    direct_sum,
    family_function,
    member_of,
    s_witness,
    witness_family,
    witness_for,
)
from .classification import (
    ClassificationError,
    ClassificationTable,
    Classifier,
    canonicalize,
    classification_table,
    classify_top_dimension,
    diagram_check,
    enumerate_classifiers,
    ke_equals_torf,
    meet,
)
