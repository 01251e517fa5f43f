"""Market evolution: subtract a strategy's actions from the pattern it trades.

Correct forecasts pull a return toward zero, wrong ones push it away. Iterating
with re-optimised strategies gives the trajectories in which bubbles show up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .core import (
    DeterministicPattern,
    Pattern,
    ScenarioPattern,
    _check_memory,
    cyclic_window,
    pattern_key,
    suffix_law,
    to_rational,
)
from .strategy import TabulatedStrategy, gain, optimal_strategy

DEFAULT_THETA = Fraction(3, 2)


class BoundaryDependent(ValueError):
    """The evolved block would depend on the previous independent block."""

    def __init__(self, position: int, scenario: int):
        self.position = position
        self.scenario = scenario
        super().__init__(
            f"action at position {position} of scenario {scenario} depends on the previous block"
        )


@dataclass(frozen=True)
class EvolutionStep:
    before: Pattern
    strategy: TabulatedStrategy
    after: Pattern
    gain: Fraction
    amplitude_before: Fraction
    amplitude_after: Fraction


@dataclass(frozen=True)
class Terminal:
    kind: str  # "max-steps" | "fixed-point" | "cycle"
    index: Optional[int] = None
    length: Optional[int] = None

    def __str__(self):
        if self.kind == "cycle":
            return f"cycle(length={self.length},first={self.index})"
        if self.kind == "fixed-point":
            return f"fixed-point({self.index})"
        return self.kind


@dataclass
class EvolutionTrajectory:
    initial: Pattern
    steps: List[EvolutionStep] = field(default_factory=list)
    terminal: Terminal = Terminal("max-steps")
    notes: List[str] = field(default_factory=list)

    @property
    def patterns(self) -> list:
        return [self.initial] + [s.after for s in self.steps]

    @property
    def final(self) -> Pattern:
        return self.steps[-1].after if self.steps else self.initial


@dataclass(frozen=True)
class BubbleReport:
    amplitudes: tuple
    peak_ratio: Optional[Fraction]
    flagged: bool
    theta: Fraction


def amplitude(pattern: Pattern) -> Fraction:
    if isinstance(pattern, DeterministicPattern):
        return max(abs(v) for v in pattern.values)
    return max(abs(v) for p, o in pattern.scenarios if p > 0 for v in o)


def evolve_deterministic(pattern: DeterministicPattern, strategy: TabulatedStrategy) -> DeterministicPattern:
    m = strategy.memory
    return DeterministicPattern(tuple(
        x - strategy(cyclic_window(pattern, i, m)) for i, x in enumerate(pattern.values, start=1)
    ))


def evolve_scenario(pattern: ScenarioPattern, strategy: TabulatedStrategy) -> ScenarioPattern:
    """Evolve every outcome; refuse when a boundary action varies with the previous block."""
    pattern.ensure_valid()
    m = strategy.memory
    p = pattern.length
    rows = pattern.scenarios
    # possible earlier-block suffixes feeding each boundary position
    heads = {i: list(suffix_law(pattern, m - (i - 1))) for i in range(1, min(m, p) + 1)}
    new_rows = []
    for s_idx, (prob, current) in enumerate(rows):
        evolved = list(current)
        for i in range(1, p + 1):
            if i > m:
                action = strategy(current[i - 1 - m:i - 1])
            else:
                tail = current[:i - 1]
                actions = {strategy(head + tail) for head in heads[i]}
                if len(actions) > 1:
                    raise BoundaryDependent(i, s_idx)
                action = actions.pop()
            evolved[i - 1] = current[i - 1] - action
        new_rows.append((prob, tuple(evolved)))
    return ScenarioPattern(tuple(new_rows))


def evolve(pattern: Pattern, strategy: TabulatedStrategy) -> Pattern:
    if isinstance(pattern, DeterministicPattern):
        return evolve_deterministic(pattern, strategy)
    return evolve_scenario(pattern, strategy)


def detect_cycle(patterns: Sequence) -> Terminal:
    """Classify a sequence of successive patterns (a trajectory's states).

    A repeat of the immediately preceding state is a fixed point; any other
    repeat is a cycle whose length is the distance between the two visits.
    Accepts an :class:`EvolutionTrajectory` as well.
    """
    if isinstance(patterns, EvolutionTrajectory):
        patterns = patterns.patterns
    seen: dict = {}
    for idx, pat in enumerate(patterns):
        key = pattern_key(pat)
        if key in seen:
            first = seen[key]
            if first == idx - 1:
                return Terminal("fixed-point", index=first)
            return Terminal("cycle", index=first, length=idx - first)
        seen[key] = idx
    return Terminal("max-steps")


def bubble_report(amplitudes: Sequence, theta=DEFAULT_THETA) -> BubbleReport:
    theta = to_rational(theta)
    amplitudes = tuple(amplitudes)
    if amplitudes[0] == 0:
        return BubbleReport(amplitudes, None, False, theta)
    ratio = max(amplitudes) / amplitudes[0]
    return BubbleReport(amplitudes, ratio, ratio >= theta, theta)


_FIG2 = DeterministicPattern((-2, 2, -2, 2, -2, 2, 3))


def _known_notes(pattern: Pattern, schedule: Sequence[int]) -> list:
    if pattern == _FIG2 and schedule and schedule[0] == 2:
        return [
            "step 1 follows the evolution rule: the last return becomes 3 - (-1) = 4; "
            "the published prose lists [-1,1,-1,1,-1,1,3], but only the 4 variant "
            "evolves into [0,0,0,0,0,0,5]"
        ]
    return []


def iterate(pattern: Pattern, schedule: Sequence[int], theta=DEFAULT_THETA,
            freeze: bool = False):
    """Evolve repeatedly with optimal strategies for the scheduled memories.

    Stops at the end of the schedule, at a fixed point, or (for a constant
    schedule) when a previously visited pattern recurs. With ``freeze=True``
    each memory's strategy is computed once on the initial pattern and reused.

    Returns ``(trajectory, bubble_report)``.
    """
    schedule = list(schedule)
    if not schedule:
        raise ValueError("schedule must be non-empty")
    for m in schedule:
        _check_memory(m)
    constant = len(set(schedule)) == 1
    traj = EvolutionTrajectory(initial=pattern, notes=_known_notes(pattern, schedule))
    frozen: dict = {}
    seen = {pattern_key(pattern): 0}
    current = pattern
    amps = [amplitude(pattern)]
    for t, m in enumerate(schedule):
        if freeze:
            if m not in frozen:
                frozen[m] = optimal_strategy(pattern, m)
            strat = frozen[m]
        else:
            strat = optimal_strategy(current, m)
        after = evolve(current, strat)
        step = EvolutionStep(
            before=current,
            strategy=strat,
            after=after,
            gain=gain(strat, current).gain,
            amplitude_before=amps[-1],
            amplitude_after=amplitude(after),
        )
        traj.steps.append(step)
        amps.append(step.amplitude_after)
        key = pattern_key(after)
        if key == pattern_key(current):
            traj.terminal = Terminal("fixed-point", index=t)
            break
        if constant and key in seen:
            first = seen[key]
            traj.terminal = Terminal("cycle", index=first, length=t + 1 - first)
            break
        seen[key] = t + 1
        current = after
    return traj, bubble_report(amps, theta)
