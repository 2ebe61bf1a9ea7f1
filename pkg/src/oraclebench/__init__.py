"""Online learning with a consistent oracle.

A workbench for the mistake game between a learner and an adversary whose
revealed functions must stay within a Littlestone-dimension budget:
exact dimension computation with shattered-tree certificates, the
majority-vote learner built on oracle answers, adversaries that realize
the known lower bounds, and a protocol engine that validates every move.
"""

from .adversary import (
    ClassGreedyAdversary,
    FloodAdversary,
    FreeAdversary,
    InformativeState,
    RandomClassAdversary,
    TernaryAdversary,
    informative_predict,
    informative_update,
    ternary_digits,
    ternary_function,
)
from .errors import (
    ClassFileError,
    ContradictorySample,
    DimensionViolation,
    EmptyClass,
    EmptyVersionSpace,
    IllegalAdversaryFunction,
    IllegalLabel,
    InconsistentOracleClass,
    InsufficientAgreement,
    NonRealizable,
    OracleBenchError,
    OracleFailure,
    RepeatedActiveFunction,
    ScheduleViolation,
    SizeLimitExceeded,
)
from .game import (
    GameConfig,
    Round,
    Transcript,
    load_transcript,
    run_game,
    save_transcript,
    validate_transcript,
)
from .hypotheses import (
    ConsistentOracle,
    Hypothesis,
    HypothesisClass,
    Sample,
    class_oracle,
    evaluate,
    hypothesis_from_support,
    is_consistent,
    load_class_file,
    minimal_extension_oracle,
    random_table_oracle,
    save_class_file,
    table_oracle,
)
from .learner import (
    ActiveList,
    AdvancedCheck,
    CreateAdvancedLearner,
    LearnerState,
    PredictLearner,
    appended_functions,
    check_advanced,
    create_advanced,
    create_advanced_widths,
    halting_mistakes,
    mistake_bound,
    predict_learner,
    predict_widths,
    vote_and_update,
)
from .littlestone import (
    LabeledTree,
    SOALearner,
    TreeNode,
    find_shattered_tree,
    format_tree,
    is_shattered,
    ldim,
    ldim_at_least,
    minimax_adversary_value,
    soa_predict,
    soa_update,
)

__version__ = "0.1.0"
