"""Exact engine for memory-bounded market efficiency.

Patterns of returns repeat forever; a memory-m strategy sees the last m
returns and answers -1, 0 or +1. This package computes gains and optimal
strategies exactly, evolves markets by subtracting strategy actions, and
reproduces the bubble and feed-off constructions.
"""

from .core import (
    DeterministicPattern,
    PatternError,
    PricePath,
    ScenarioPattern,
    block_pair_enumeration,
    cyclic_window,
    price_path,
    sign,
    validate,
)
from .strategy import (
    ContextWeights,
    GainReport,
    TabulatedStrategy,
    context_weights,
    gain,
    is_efficient,
    min_inefficient_memory,
    optimal_gain,
    optimal_strategy,
)
from .oracle import OracleCapExceeded, brute_force_optimal_gain, direct_gain
from .evolution import (
    BoundaryDependent,
    BubbleReport,
    EvolutionStep,
    EvolutionTrajectory,
    amplitude,
    detect_cycle,
    evolve,
    evolve_deterministic,
    evolve_scenario,
    iterate,
)
from .constructions import (
    FeedoffParams,
    FeedoffReport,
    expand_to_deterministic,
    fair_coin,
    feedoff_pattern,
    feedoff_report,
    figure_patterns,
    parity_pattern,
)
from .analytics import SweepConfig, SweepReport, autocorr1, compare_gain_autocorr, random_pattern, sweep
from .kernels import BACKEND

__version__ = "0.1.0"
