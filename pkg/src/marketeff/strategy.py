"""Memory-m strategies: context weights, gains and the optimal table.

Actions are in {-1, 0, 1}, so the expected gain of any tabulated strategy is
linear in its table: ``gain(s) = sum_c s(c) * w(c)`` where ``w(c)`` is the
probability-weighted sum of next-return signs following context ``c``.
The optimum is then ``sum_c |w(c)|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .core import (
    DeterministicPattern,
    Pattern,
    PatternError,
    _check_memory,
    format_rational,
    sign,
    suffix_law,
    to_rational,
    validate,
)


@dataclass(frozen=True, eq=False)
class TabulatedStrategy:
    """A finite action table; contexts missing from it map to 0.

    Zero entries are dropped on construction, so two strategies that act the
    same compare equal.
    """

    memory: int
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        _check_memory(self.memory)
        clean = {}
        for ctx, action in dict(self.table).items():
            ctx = tuple(to_rational(v) for v in ctx)
            if len(ctx) != self.memory:
                raise ValueError(f"context {ctx} has length {len(ctx)}, expected {self.memory}")
            if action not in (-1, 0, 1):
                raise ValueError(f"action {action!r} not in {{-1, 0, 1}}")
            if action:
                clean[ctx] = int(action)
        object.__setattr__(self, "table", clean)

    def __call__(self, context) -> int:
        return self.table.get(tuple(context), 0)

    def __eq__(self, other):
        if not isinstance(other, TabulatedStrategy):
            return NotImplemented
        return self.memory == other.memory and self.table == other.table

    def __len__(self):
        return len(self.table)

    def negated(self) -> "TabulatedStrategy":
        """The mirror strategy ``c -> -s(-c)``."""
        return TabulatedStrategy(self.memory, {tuple(-v for v in c): -a for c, a in self.table.items()})

    def entries(self):
        return sorted(self.table.items())

    @classmethod
    def zero(cls, memory: int) -> "TabulatedStrategy":
        return cls(memory, {})

    @classmethod
    def from_function(cls, memory, fn, contexts) -> "TabulatedStrategy":
        return cls(memory, {tuple(c): fn(tuple(c)) for c in contexts})


@dataclass(frozen=True)
class ContextWeights:
    memory: int
    weights: dict

    def __getitem__(self, ctx):
        return self.weights.get(tuple(ctx), Fraction(0))

    def contexts(self):
        return list(self.weights)

    def total_abs(self) -> Fraction:
        return sum((abs(w) for w in self.weights.values()), Fraction(0))


@dataclass(frozen=True)
class GainReport:
    gain: Fraction
    contributions: dict

    def __str__(self):
        return format_rational(self.gain)


def _require_valid(pattern: Pattern) -> None:
    problems = validate(pattern)
    if problems:
        raise PatternError(problems)


def context_weights(pattern: Pattern, m: int) -> ContextWeights:
    _check_memory(m)
    _require_valid(pattern)
    weights: dict = {}
    if isinstance(pattern, DeterministicPattern):
        vals = pattern.values
        p = len(vals)
        for i in range(p):
            ctx = tuple(vals[(i - m + j) % p] for j in range(m))
            weights[ctx] = weights.get(ctx, 0) + sign(vals[i])
        return ContextWeights(m, {c: Fraction(w) for c, w in weights.items()})
    # A window that crosses the block boundary is (suffix of earlier blocks,
    # prefix of the current one), and the two halves are independent, so the
    # tally factorises into a suffix law times a signed prefix tally.
    p = pattern.length
    zero = Fraction(0)
    for i in range(1, p + 1):
        back = m - (i - 1)
        if back <= 0:
            for prob, outcome in pattern.scenarios:
                ctx = outcome[i - 1 - m:i - 1]
                weights[ctx] = weights.get(ctx, zero) + prob * sign(outcome[i - 1])
            continue
        prefix: dict = {}
        for prob, outcome in pattern.scenarios:
            key = outcome[:i - 1]
            prefix[key] = prefix.get(key, zero) + prob * sign(outcome[i - 1])
        for head, ph in suffix_law(pattern, back).items():
            for tail, wt in prefix.items():
                ctx = head + tail
                weights[ctx] = weights.get(ctx, zero) + ph * wt
    return ContextWeights(m, weights)


def gain(strategy: TabulatedStrategy, pattern: Pattern,
         weights: Optional[ContextWeights] = None) -> GainReport:
    if weights is None:
        weights = context_weights(pattern, strategy.memory)
    elif weights.memory != strategy.memory:
        raise ValueError("weights were computed for a different memory")
    contributions = {}
    for ctx, action in strategy.table.items():
        w = weights[ctx]
        if w:
            contributions[ctx] = action * w
    return GainReport(sum(contributions.values(), Fraction(0)), contributions)


def optimal_strategy(pattern: Pattern, m: int) -> TabulatedStrategy:
    """Trade the sign of each context's weight; zero-weight and unseen contexts abstain.

    Among all gain maximisers this one trades least.
    """
    weights = context_weights(pattern, m)
    return TabulatedStrategy(m, {c: sign(w) for c, w in weights.weights.items() if w})


def optimal_gain(pattern: Pattern, m: int) -> Fraction:
    return context_weights(pattern, m).total_abs()


def is_efficient(pattern: Pattern, m: int) -> bool:
    # the all-zero strategy gains 0, so "no positive gain" is "optimum == 0"
    return optimal_gain(pattern, m) == 0


def min_inefficient_memory(pattern: Pattern, m_max: int) -> Optional[int]:
    _check_memory(m_max)
    for m in range(1, m_max + 1):
        if not is_efficient(pattern, m):
            return m
    return None
