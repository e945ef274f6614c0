"""Words, substitutions, train track maps, and finite exponent quotients.

The flat namespace re-exports the working vocabulary.  Two names stay
qualified because both submodules define one: ``substitutions.compose``
and ``automorphisms.compose``.
"""

from .automorphisms import (
    AbelianizationMatrix,
    BasisMap,
    Growth,
    GrowthEstimate,
    abelianization,
    growth_rank2,
    growth_rate_estimate,
    polynomial_order_bound,
    verify_automorphism,
)
from .burnside import (
    CosetTable,
    ElementaryMove,
    EnumerationIncomplete,
    ExceedsBound,
    FiniteQuotient,
    Joined,
    MoveParams,
    Order,
    SearchBudget,
    Undecided,
    apply_elementary_move,
    burnside_oracle,
    common_descendant_search,
    find_elementary_moves,
    induced_order,
    move_log,
    todd_coxeter,
)
from .graphmap import (
    AuditReport,
    EdgePath,
    Graph,
    RefinementNeeded,
    RTTReport,
    StratifiedGraphMap,
    StratumKind,
    StratumReport,
    Turn,
    TurnTable,
    YellowPiece,
    build_turn_table,
    check_rtt,
    classify_strata,
    f_sharp,
    growth_classify,
    induced_substitution,
    path_is_k_legal,
    pf_length,
    red_alphabet,
    red_commutation_check,
    red_projection,
    yellow_loop_audit,
    yellow_red_split,
)
from .limits import GrowthCapExceeded, letter_cap
from .matrices import (
    NonnegIntMatrix,
    PFResult,
    PowerIterationError,
    int_determinant,
    is_irreducible,
    is_primitive,
    is_transitive_permutation,
    pf_eigenvalue,
    pf_eigenvalue_via_shift,
)
from .substitutions import (
    FixedPointStream,
    NonOrientable,
    NoPeriodUpTo,
    Orientable,
    Periodic,
    Substitution,
    certify_aperiodic_by_eigenvalue,
    detect_shift_period,
    fixed_point_prefix,
    orbit,
    orbit_power_index,
    orientability,
)
from .words import (
    Alphabet,
    GroupWord,
    InverseAlphabet,
    PowerRun,
    Word,
    cyclic_reduce,
    find_power_runs,
    flip,
    max_power_index,
    primitive_root,
    reduce,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianizationMatrix",
    "Alphabet",
    "AuditReport",
    "BasisMap",
    "CosetTable",
    "EdgePath",
    "ElementaryMove",
    "EnumerationIncomplete",
    "ExceedsBound",
    "FiniteQuotient",
    "FixedPointStream",
    "Graph",
    "GroupWord",
    "Growth",
    "GrowthCapExceeded",
    "GrowthEstimate",
    "InverseAlphabet",
    "Joined",
    "MoveParams",
    "NonOrientable",
    "NonnegIntMatrix",
    "NoPeriodUpTo",
    "Order",
    "Orientable",
    "PFResult",
    "Periodic",
    "PowerIterationError",
    "PowerRun",
    "RefinementNeeded",
    "RTTReport",
    "SearchBudget",
    "StratifiedGraphMap",
    "StratumKind",
    "StratumReport",
    "Substitution",
    "Turn",
    "TurnTable",
    "Undecided",
    "Word",
    "YellowPiece",
    "abelianization",
    "apply_elementary_move",
    "build_turn_table",
    "burnside_oracle",
    "certify_aperiodic_by_eigenvalue",
    "check_rtt",
    "classify_strata",
    "common_descendant_search",
    "cyclic_reduce",
    "detect_shift_period",
    "f_sharp",
    "find_elementary_moves",
    "find_power_runs",
    "fixed_point_prefix",
    "flip",
    "growth_classify",
    "growth_rank2",
    "growth_rate_estimate",
    "induced_order",
    "induced_substitution",
    "int_determinant",
    "is_irreducible",
    "is_primitive",
    "is_transitive_permutation",
    "letter_cap",
    "max_power_index",
    "move_log",
    "orbit",
    "orbit_power_index",
    "orientability",
    "path_is_k_legal",
    "pf_eigenvalue",
    "pf_eigenvalue_via_shift",
    "pf_length",
    "polynomial_order_bound",
    "primitive_root",
    "red_alphabet",
    "red_commutation_check",
    "red_projection",
    "reduce",
    "todd_coxeter",
    "verify_automorphism",
    "yellow_loop_audit",
    "yellow_red_split",
]
