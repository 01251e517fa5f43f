"""Independent check of the optimal gain by exhaustive table search.

Nothing here goes through :mod:`marketeff.strategy`'s weight tally: the gain of
each candidate table is evaluated as the raw expectation of
``sign(action * next_return)`` over the enumerated realisations.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import kernels
from .core import Pattern, PatternError, _check_memory, block_pair_enumeration, sign, validate

DEFAULT_CAP = 3 ** 16

_INT64_SAFE = 2 ** 62


class OracleCapExceeded(RuntimeError):
    pass


def direct_gain(strategy, pattern: Pattern) -> Fraction:
    """Gain of ``strategy`` evaluated straight from its definition."""
    total = Fraction(0)
    for _, ctx, target, prob in block_pair_enumeration(pattern, strategy.memory):
        total += prob * sign(strategy(ctx) * target)
    return total


def _outcome_table(pattern: Pattern, m: int):
    """Distribution of (context, sign of next return), summed over positions."""
    mass: dict = {}
    order: dict = {}
    for _, ctx, target, prob in block_pair_enumeration(pattern, m):
        order.setdefault(ctx, len(order))
        key = (ctx, sign(target))
        mass[key] = mass.get(key, Fraction(0)) + prob
    return order, mass


def brute_force_optimal_gain(pattern: Pattern, m: int, cap: int = DEFAULT_CAP) -> Fraction:
    _check_memory(m)
    problems = validate(pattern)
    if problems:
        raise PatternError(problems)
    order, mass = _outcome_table(pattern, m)
    k = len(order)
    if 3 ** k > cap:
        raise OracleCapExceeded(f"3**{k} action tables exceed the cap {cap}")
    entries = [(order[ctx], t, p) for (ctx, t), p in mass.items() if t != 0 and p != 0]
    denom = math.lcm(*(p.denominator for _, _, p in entries)) if entries else 1
    ctx_ids = [c for c, _, _ in entries]
    signs = [t for _, t, _ in entries]
    weights = [p.numerator * (denom // p.denominator) for _, _, p in entries]
    if sum(weights) < _INT64_SAFE:
        best = kernels.max_table_gain(
            np.asarray(ctx_ids, dtype=np.int64),
            np.asarray(signs, dtype=np.int8),
            np.asarray(weights, dtype=np.int64),
            k,
        )
    else:
        best = kernels.max_table_gain_exact(ctx_ids, signs, weights, k)
    return Fraction(int(best), denom)
