import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marketeff import (
    DeterministicPattern,
    TabulatedStrategy,
    context_weights,
    direct_gain,
    gain,
    is_efficient,
    min_inefficient_memory,
    optimal_gain,
    optimal_strategy,
)
from marketeff.constructions import parity_pattern

from strategies import any_patterns, deterministic_patterns


def _materialised_gain(values, table, m):
    """Gain over one block of the periodic market, read off a literal copy of it."""
    p = len(values)
    seq = list(values) * (m // p + 2)
    start = len(seq) - p
    return sum(
        (table.get(tuple(seq[t - m:t]), 0) * (1 if seq[t] > 0 else -1 if seq[t] < 0 else 0))
        for t in range(start, len(seq))
    )


def _exhaustive_optimum(values, m):
    p = len(values)
    seq = list(values) * (m // p + 2)
    contexts = sorted({tuple(seq[t - m:t]) for t in range(len(seq) - p, len(seq))})
    return max(
        _materialised_gain(values, dict(zip(contexts, actions)), m)
        for actions in itertools.product((-1, 0, 1), repeat=len(contexts))
    )


def test_context_weights_examples(fig1, faircoin):
    assert context_weights(fig1, 2)[(-1, 1)] == -1
    for m in range(1, 5):
        assert all(w == 0 for w in context_weights(faircoin, m).weights.values())
    w = context_weights(DeterministicPattern((1, 1, -2)), 1)
    assert w[(1,)] == 0
    assert w[(-2,)] == 1


def test_gain_examples(fig2):
    assert gain(TabulatedStrategy.zero(2), fig2).gain == 0
    for m in (1, 2, 3):
        P = parity_pattern(m)
        parity = TabulatedStrategy.from_function(
            m + 1,
            lambda ctx: math.prod(1 if x > 0 else -1 for x in ctx),
            itertools.product((1, -1), repeat=m + 1),
        )
        assert gain(parity, P).gain == 1
    # frozen from the exhaustive 3**4 search above
    assert _exhaustive_optimum(fig2.values, 2) == 5
    assert gain(optimal_strategy(fig2, 2), fig2).gain == 5


def test_optimal_strategy_examples(fig1, faircoin):
    assert optimal_strategy(fig1, 2)((-1, 1)) == -1
    assert optimal_strategy(faircoin, 3).table == {}
    s = optimal_strategy(DeterministicPattern((1, 1, -2)), 1)
    assert s((1,)) == 0
    assert s((-2,)) == 1
    assert s((7,)) == 0


def test_optimal_gain_examples(fig2):
    for m in (1, 2, 3):
        assert optimal_gain(parity_pattern(m), m) == 0
        assert optimal_gain(parity_pattern(m), m + 1) == 1
    assert optimal_gain(fig2, 2) == 5


def test_is_efficient_examples(faircoin):
    assert all(is_efficient(faircoin, m) for m in range(1, 6))
    assert is_efficient(parity_pattern(2), 2)
    assert not is_efficient(parity_pattern(2), 3)
    assert not is_efficient(DeterministicPattern((1, 1)), 1)


def test_min_inefficient_memory(faircoin):
    assert min_inefficient_memory(parity_pattern(2), 5) == 3
    assert min_inefficient_memory(DeterministicPattern((1,)), 3) == 1
    assert min_inefficient_memory(faircoin, 5) is None


def test_strategy_table_validation():
    with pytest.raises(ValueError):
        TabulatedStrategy(2, {(1,): 1})
    with pytest.raises(ValueError):
        TabulatedStrategy(1, {(1,): 2})
    assert TabulatedStrategy(1, {(1,): 0}) == TabulatedStrategy.zero(1)


@settings(max_examples=150)
@given(deterministic_patterns(max_size=6), st.integers(1, 3))
def test_optimum_matches_materialised_search(pattern, m):
    assert optimal_gain(pattern, m) == _exhaustive_optimum(pattern.values, m)


@settings(max_examples=150)
@given(any_patterns(), st.integers(1, 4), st.data())
def test_gain_is_linear_in_weights(pattern, m, data):
    weights = context_weights(pattern, m)
    contexts = weights.contexts()
    actions = data.draw(st.lists(st.sampled_from((-1, 0, 1)), min_size=len(contexts), max_size=len(contexts)))
    strat = TabulatedStrategy(m, dict(zip(contexts, actions)))
    report = gain(strat, pattern)
    assert report.gain == sum(report.contributions.values())
    assert report.gain == direct_gain(strat, pattern)
    assert abs(report.gain) <= len(pattern)


@settings(max_examples=150)
@given(any_patterns(), st.integers(1, 4))
def test_optimal_strategy_attains_optimal_gain_and_trades_least(pattern, m):
    strat = optimal_strategy(pattern, m)
    g = optimal_gain(pattern, m)
    assert gain(strat, pattern).gain == g >= 0
    assert context_weights(pattern, m).total_abs() == g
    # any table acting on a zero-weight context gains nothing more
    weights = context_weights(pattern, m)
    assert all(weights[c] != 0 for c in strat.table)


@settings(max_examples=150)
@given(any_patterns(), st.integers(1, 4))
def test_efficiency_equivalences(pattern, m):
    eff = is_efficient(pattern, m)
    assert eff == all(w == 0 for w in context_weights(pattern, m).weights.values())
    assert eff == (optimal_strategy(pattern, m) == TabulatedStrategy.zero(m))
