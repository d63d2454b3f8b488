"""Exact calculus for branching-measurement betting games.

The library canonicalizes games over labeled measurement bases, applies
machine-checked equivalence rewrites, derives game values from qualitative
axioms as replayable traces, brute-force verifies that branch weights are
the unique order-representing probability measure, constructs additive
value functions from preference oracles by interval bisection, and computes
exact frequency-inference quantities for repeated measurements.

Everything except the one explicitly labeled normal-curve approximation is
exact rational arithmetic.
"""

from .errors import (
    AxiomViolationError,
    DegenerateBetError,
    DomainMismatchError,
    EmptyGameError,
    InvalidGameError,
    OracleInconsistencyError,
    PreconditionError,
    QGamesError,
    SchemaError,
    SizeLimitError,
    SoundnessError,
    UnvaluedConsequenceError,
)
from .exact import (
    Amplitude,
    GeneralizedPermutation,
    Rational,
    amp_mul,
    apply_gperm,
    format_rational,
    parse_rational,
)
from .games import (
    CanonicalGame,
    CompositeGame,
    Consequence,
    Game,
    Observable,
    canonicalize,
    consequence_weight,
    expected_utility,
    flatten,
    numeric_consequence,
    validate_game,
)
from .equivalence import (
    RewriteStep,
    apply_met,
    apply_oet,
    apply_op_symmetry,
    apply_pet,
    apply_set,
    apply_state_symmetry,
    equivalent,
    replay,
)
from .derivation import (
    AxiomUse,
    DerivationTrace,
    Precision,
    additivity_lemma,
    derive_equal_weight,
    derive_rational_weights,
    derive_stage1,
    derive_stage1_on,
    derive_value,
    truncate_bounds,
    validate_trace,
    value_profile,
)
from .ordering import Ordering, compare
from .probability import (
    Bet,
    CandidateMeasure,
    Event,
    GambleTable,
    Measurement,
    MeasureReport,
    UniquenessReport,
    VnmReport,
    check_measure,
    event_weight,
    mix,
    more_probable,
    power_set_events,
    uniqueness_search,
    vnm_check,
    weight_measure,
)
from .valuefn import (
    PreferenceOracle,
    ValueCut,
    build_value,
    derive_act_probabilities,
    integer_oracle,
    money_oracle,
)
from .inference import (
    RepeatedMeasurement,
    acceptance_threshold,
    acceptance_weight,
    branch_weight,
    gaussian_approx,
    strategy_eu,
)
from .serialize import (
    game_from_jsonable,
    game_to_jsonable,
    load_game,
    load_measurement,
    measurement_from_jsonable,
)

__version__ = "0.1.0"
