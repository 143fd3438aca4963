"""Classification of 3-player XOR nonlocal games and Monte Carlo study of
their satisfiability and pseudotelepathy phase structure."""

from .classify import (
    Classification,
    HnfPartition,
    Method,
    classify_dual,
    classify_hnf,
    classify_snf,
    cross_check,
    unique_merp,
)
from .errors import (
    ClassifierDisagreement,
    DegenerateFit,
    DimensionMismatch,
    DuplicateClause,
    ExhaustedSpace,
    IndexOutOfRange,
    LengthMismatch,
    NoCrossing,
    NotQPerfect,
    NotStaircase,
    ParseError,
    XorGamesError,
)
from .experiments import (
    ProbabilityEstimate,
    PseudoMax,
    TransitionEstimate,
    cross_section,
    estimate_probabilities,
    find_transition,
    fit_linear,
    max_pseudotelepathy,
    sweep_grid,
    wilson_half_width,
    write_table,
)
from .games import (
    Clause,
    Dedup,
    DefiningSystem,
    XorGame,
    defining_system,
    format_game,
    make_game,
    parse_game,
    sample_random_game,
)
from .linalg import (
    HnfResult,
    IntMatrix,
    SnfResult,
    determinant,
    hnf,
    integer_solvable,
    snf,
    solve_mod2,
    solve_triangular_rational,
)
from .strategies import (
    ClassicalStrategy,
    MerpStrategy,
    classical_score,
    is_perfect_merp,
    merp_score,
    simulate_merp,
)

__all__ = [
    "Classification",
    "ClassicalStrategy",
    "ClassifierDisagreement",
    "Clause",
    "Dedup",
    "DefiningSystem",
    "DegenerateFit",
    "DimensionMismatch",
    "DuplicateClause",
    "ExhaustedSpace",
    "HnfPartition",
    "HnfResult",
    "IndexOutOfRange",
    "IntMatrix",
    "LengthMismatch",
    "MerpStrategy",
    "Method",
    "NoCrossing",
    "NotQPerfect",
    "NotStaircase",
    "ParseError",
    "ProbabilityEstimate",
    "PseudoMax",
    "SnfResult",
    "TransitionEstimate",
    "XorGame",
    "XorGamesError",
    "classical_score",
    "classify_dual",
    "classify_hnf",
    "classify_snf",
    "cross_check",
    "cross_section",
    "defining_system",
    "determinant",
    "estimate_probabilities",
    "find_transition",
    "fit_linear",
    "format_game",
    "hnf",
    "integer_solvable",
    "is_perfect_merp",
    "make_game",
    "max_pseudotelepathy",
    "merp_score",
    "parse_game",
    "sample_random_game",
    "simulate_merp",
    "snf",
    "solve_mod2",
    "solve_triangular_rational",
    "sweep_grid",
    "unique_merp",
    "wilson_half_width",
    "write_table",
]
