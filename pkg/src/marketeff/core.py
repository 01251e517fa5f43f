"""Exact pattern model: rationals, deterministic and scenario patterns, windows.

A market is the independent repetition of a finite *pattern* block. A
deterministic pattern is a fixed list of returns; a scenario pattern is a
finite weighted table of equal-length outcomes describing the joint law of one
block. Every number here is a :class:`fractions.Fraction`; nothing in the
engine touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterator, Sequence, Union

Rational = Fraction
Context = tuple  # tuple[Fraction, ...], oldest first


class PatternError(ValueError):
    """Raised when a pattern fails validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def to_rational(x) -> Fraction:
    """Coerce ``x`` to an exact Fraction.

    Accepts ints, Fractions and strings such as ``"-2"``, ``"1/8"`` or
    ``"0.4"``. Floats are refused: they would smuggle binary rounding in.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not returns")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {x!r}") from exc
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DeterministicPattern:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_rational(v) for v in self.values))
        if not self.values:
            raise PatternError(["pattern length must be >= 1"])

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, idx):
        return self.values[idx]

    def __neg__(self):
        return DeterministicPattern(tuple(-v for v in self.values))

    def scale(self, factor) -> "DeterministicPattern":
        factor = to_rational(factor)
        return DeterministicPattern(tuple(factor * v for v in self.values))

    @property
    def length(self) -> int:
        return len(self.values)

    def as_scenarios(self) -> "ScenarioPattern":
        return ScenarioPattern(((Fraction(1), self.values),))

    def __repr__(self):
        return "DeterministicPattern([" + ", ".join(format_rational(v) for v in self.values) + "])"


@dataclass(frozen=True)
class ScenarioPattern:
    """Joint law of one block, as ``(probability, outcome)`` rows.

    Construction does not validate; call :func:`validate` or
    :meth:`ensure_valid`. Engine operations do the latter.
    """

    scenarios: tuple

    def __post_init__(self):
        rows = []
        for prob, outcome in self.scenarios:
            rows.append((to_rational(prob), tuple(to_rational(v) for v in outcome)))
        object.__setattr__(self, "scenarios", tuple(rows))

    @property
    def length(self) -> int:
        return len(self.scenarios[0][1]) if self.scenarios else 0

    def __len__(self):
        return self.length

    @property
    def probabilities(self):
        return tuple(p for p, _ in self.scenarios)

    @property
    def outcomes(self):
        return tuple(o for _, o in self.scenarios)

    def __neg__(self):
        return ScenarioPattern(tuple((p, tuple(-v for v in o)) for p, o in self.scenarios))

    def scale(self, factor) -> "ScenarioPattern":
        factor = to_rational(factor)
        return ScenarioPattern(tuple((p, tuple(factor * v for v in o)) for p, o in self.scenarios))

    def ensure_valid(self) -> "ScenarioPattern":
        problems = validate(self)
        if problems:
            raise PatternError(problems)
        return self

    def canonical(self) -> "ScenarioPattern":
        """Merge identical outcomes and sort rows; used for structural equality."""
        merged: dict = {}
        for p, o in self.scenarios:
            merged[o] = merged.get(o, Fraction(0)) + p
        rows = sorted((o, p) for o, p in merged.items() if p != 0)
        return ScenarioPattern(tuple((p, o) for o, p in rows))

    def same_law(self, other: "ScenarioPattern") -> bool:
        return self.canonical().scenarios == other.canonical().scenarios


Pattern = Union[DeterministicPattern, ScenarioPattern]


@dataclass(frozen=True)
class PricePath:
    start: Fraction
    prices: tuple


def as_scenario_pattern(pattern: Pattern) -> ScenarioPattern:
    if isinstance(pattern, DeterministicPattern):
        return pattern.as_scenarios()
    return pattern.ensure_valid()


def is_deterministic(pattern: Pattern) -> bool:
    if isinstance(pattern, DeterministicPattern):
        return True
    return len(pattern.canonical().scenarios) == 1


def pattern_key(pattern: Pattern):
    """Hashable exact key; scenario patterns compare as canonical sorted tables."""
    if isinstance(pattern, DeterministicPattern):
        return ("d", pattern.values)
    return ("s", pattern.canonical().scenarios)


def validate(pattern) -> list:
    """Return every violation found in ``pattern`` (empty list means ok)."""
    if isinstance(pattern, DeterministicPattern):
        return [] if len(pattern.values) >= 1 else ["pattern length must be >= 1"]
    problems = []
    if not pattern.scenarios:
        return ["scenario table is empty"]
    lengths = {len(o) for _, o in pattern.scenarios}
    if len(lengths) > 1:
        problems.append(f"unequal lengths: outcomes have lengths {sorted(lengths)}")
    if min(lengths) < 1:
        problems.append("pattern length must be >= 1")
    for idx, (p, _) in enumerate(pattern.scenarios):
        if not (0 < p <= 1):
            problems.append(f"scenario {idx}: probability {format_rational(p)} outside (0, 1]")
    total = sum(pattern.probabilities, Fraction(0))
    if total != 1:
        problems.append(f"sum != 1: probabilities sum to {format_rational(total)}")
    return problems


def _check_memory(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"memory must be an integer >= 1, got {m!r}")


def cyclic_window(pattern: DeterministicPattern, i: int, m: int) -> Context:
    """The ``m`` returns before 1-based position ``i`` of the periodic market."""
    _check_memory(m)
    p = len(pattern.values)
    if not 1 <= i <= p:
        raise ValueError(f"position {i} outside 1..{p}")
    vals = pattern.values
    return tuple(vals[(i - 1 - m + j) % p] for j in range(m))


def block_pair_enumeration(pattern: Pattern, m: int) -> Iterator[tuple]:
    """Yield ``(i, context, target, probability)`` covering every realisation.

    Windows that reach before the current block draw from independent copies
    of the block, as many as the memory requires. Positions whose window stays
    inside the current block only enumerate the current scenario, so the
    probabilities of each position sum to one.
    """
    _check_memory(m)
    sp = as_scenario_pattern(pattern)
    p = sp.length
    rows = sp.scenarios
    for i in range(1, p + 1):
        back = m - (i - 1)
        n_prev = 0 if back <= 0 else -(-back // p)
        offset = n_prev * p + i - 1
        for combo in itertools.product(rows, repeat=n_prev + 1):
            prob = Fraction(1)
            seq: list = []
            for q, outcome in combo:
                prob *= q
                seq.extend(outcome)
            yield i, tuple(seq[offset - m:offset]), seq[offset], prob


def suffix_law(pattern: ScenarioPattern, length: int) -> dict:
    """Law of the last ``length`` returns before a block boundary.

    ``length`` may exceed the pattern length, in which case the suffix spans
    several independent earlier blocks. Returns ``{values: probability}``.
    """
    p = pattern.length
    law: dict = {}
    if length <= p:
        for prob, outcome in pattern.scenarios:
            key = outcome[p - length:]
            law[key] = law.get(key, Fraction(0)) + prob
        return law
    block = suffix_law(pattern, p)
    for head, ph in suffix_law(pattern, length - p).items():
        for tail, pt in block.items():
            key = head + tail
            law[key] = law.get(key, Fraction(0)) + ph * pt
    return law


def price_path(pattern: DeterministicPattern, start=0) -> PricePath:
    start = to_rational(start)
    prices = [start]
    for v in pattern.values:
        prices.append(prices[-1] + v)
    return PricePath(start, tuple(prices))


__all__: Sequence[str] = [
    "Context",
    "DeterministicPattern",
    "Pattern",
    "PatternError",
    "PricePath",
    "Rational",
    "ScenarioPattern",
    "as_scenario_pattern",
    "block_pair_enumeration",
    "cyclic_window",
    "format_rational",
    "is_deterministic",
    "pattern_key",
    "price_path",
    "sign",
    "suffix_law",
    "to_rational",
    "validate",
]
