"""Equilibria and bargaining solutions for a two-provider spectrum market."""

from ._core import (
    DegenerateTransferError,
    DisagreementPoint,
    DomainError,
    EquilibriumPath,
    Investments,
    MarketParams,
    MarketSplit,
    ModelCase,
    NbsBranch,
    NbsSolution,
    NoEquilibriumError,
    OptResult,
    Outcome,
    Payoffs,
    Prices,
    SpneSolution,
    Stage2Label,
    Transition,
    ValidationError,
    disagreement_from_spne,
    find_thresholds,
    full_lease_threshold,
    hotelling_stage1_objective,
    hotelling_stage2_if,
    hotelling_stage3_prices,
    market_split,
    maximize_scalar,
    nash_product,
    outside_option_stage2_if,
    outside_option_stage3_prices,
    psi,
    run_cli,
    solve_nbs,
    solve_spne,
    stage_payoffs,
    u_excess,
    validate,
)

__version__ = "0.1.0"
