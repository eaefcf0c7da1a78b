"""esskit: exact decision and certification of evolutionarily stable strategies.

A library and CLI for symmetric two-player games over exact rationals:
ESS verification with machine-checkable certificates, invasion search,
ESS enumeration (full and restricted-support), MINMAX-CLIQUE decision,
the clique-to-game reduction, and the two support-restriction-removal
gadgets (duplication and rock-paper-scissors triplication).
"""

from .clique import (
    MinmaxCliqueInstance,
    MinmaxResult,
    Selector,
    enumerate_selectors,
    max_clique,
    remove_dominated,
    solve,
)
from .errors import EsskitError, UsageError, ValidationError
from .ess import (
    ESS,
    INVADED,
    NOT_NASH,
    EssVerdict,
    PatternProof,
    TangentCone,
    find_ess,
    invasion_search,
    nash_candidates,
    tangent_cone,
    tangent_identity_check,
    verify_ess,
)
from .game import (
    MixedStrategy,
    SymmetricGame,
    best_response_set,
    is_symmetric_nash,
    payoff_mixed,
    payoff_pure,
    strategy_payoffs,
    unique_best_response_witness,
)
from .gadgets import (
    RPS_MATRIX,
    TransformOutput,
    duplicate_transform,
    interchangeable_block_check,
    no_ess_mass_on_block,
    rps_transform,
    uniform_lift,
)
from .reduction import ReductionOutput, clique_invader, expected_ess_profile, reduce_instance

__all__ = [
    "ESS",
    "EssVerdict",
    "EsskitError",
    "INVADED",
    "MinmaxCliqueInstance",
    "MinmaxResult",
    "MixedStrategy",
    "NOT_NASH",
    "PatternProof",
    "RPS_MATRIX",
    "ReductionOutput",
    "Selector",
    "SymmetricGame",
    "TangentCone",
    "TransformOutput",
    "UsageError",
    "ValidationError",
    "best_response_set",
    "clique_invader",
    "duplicate_transform",
    "enumerate_selectors",
    "expected_ess_profile",
    "find_ess",
    "interchangeable_block_check",
    "invasion_search",
    "is_symmetric_nash",
    "max_clique",
    "nash_candidates",
    "no_ess_mass_on_block",
    "payoff_mixed",
    "payoff_pure",
    "reduce_instance",
    "remove_dominated",
    "rps_transform",
    "solve",
    "strategy_payoffs",
    "tangent_cone",
    "tangent_identity_check",
    "unique_best_response_witness",
    "uniform_lift",
    "verify_ess",
]
