"""Autocorrelation comparison, seeded random patterns and bubble sweeps."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import DeterministicPattern, sign, to_rational
from .evolution import DEFAULT_THETA, iterate
from .strategy import optimal_gain

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea & Flood 2014); bit-exact on every platform.

    ``below(n)`` draws uniformly from ``range(n)`` by rejecting the biased
    top slice of the 64-bit range.
    """

    GAMMA = 0x9E3779B97F4A7C15
    MUL1 = 0xBF58476D1CE4E5B9
    MUL2 = 0x94D049BB133111EB

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + self.GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MUL1) & _MASK64
        z = ((z ^ (z >> 27)) * self.MUL2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def permutation(self, n: int) -> list:
        # Fisher-Yates, high index first
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def autocorr1(pattern: DeterministicPattern) -> Fraction:
    """Cyclic lag-1 sign autocorrelation, ``mean_i sign(x_i) * sign(x_{i+1})``.

    This is not the mean-centred Pearson coefficient; on +-1 series it is the
    quantity that lower-bounds the optimal memory-1 gain.
    """
    vals = pattern.values
    p = len(vals)
    total = sum(sign(vals[i]) * sign(vals[(i + 1) % p]) for i in range(p))
    return Fraction(total, p)


def compare_gain_autocorr(pattern: DeterministicPattern) -> tuple:
    """Return ``(optimal memory-1 gain, p * |autocorr1|)``.

    For +-1 patterns the first is never below the second; a violation raises
    AssertionError since it would mean the engine is wrong.
    """
    g = optimal_gain(pattern, 1)
    scaled = len(pattern) * abs(autocorr1(pattern))
    if all(abs(v) == 1 for v in pattern.values):
        assert g >= scaled, f"memory-1 gain {g} below scaled autocorrelation {scaled}"
    return g, scaled


def random_pattern(length: int, value_set: Sequence, seed: int) -> DeterministicPattern:
    if length < 1:
        raise ValueError("length must be >= 1")
    values = [to_rational(v) for v in value_set]
    if not values:
        raise ValueError("value_set must be non-empty")
    rng = SplitMix64(seed)
    return DeterministicPattern(tuple(values[rng.below(len(values))] for _ in range(length)))


@dataclass(frozen=True)
class SweepConfig:
    count: int = 100
    pattern_length: int = 20
    value_set: tuple = tuple(v for v in range(-3, 4) if v)
    memory: int = 3
    steps: int = 16
    theta: Fraction = DEFAULT_THETA
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value_set", tuple(to_rational(v) for v in self.value_set))
        object.__setattr__(self, "theta", to_rational(self.theta))
        for name in ("count", "pattern_length", "steps", "memory"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not self.value_set:
            raise ValueError("value_set must be non-empty")

    def pattern_seed(self, index: int) -> int:
        return (self.seed + index) & _MASK64


@dataclass(frozen=True)
class SweepRow:
    index: int
    seed: int
    flagged: bool
    peak_ratio: Optional[Fraction]
    terminal: str
    initial: DeterministicPattern
    final: DeterministicPattern


@dataclass
class SweepReport:
    config: SweepConfig
    rows: list = field(default_factory=list)

    @property
    def flagged_count(self) -> int:
        return sum(r.flagged for r in self.rows)

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.flagged_count, len(self.rows))

    def ratio_histogram(self) -> dict:
        """Count of rows per exact peak ratio (``None`` for all-zero starts)."""
        hist: dict = {}
        for r in self.rows:
            hist[r.peak_ratio] = hist.get(r.peak_ratio, 0) + 1
        return dict(sorted(hist.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)))


def _sweep_one(args) -> SweepRow:
    config, index = args
    seed = config.pattern_seed(index)
    pattern = random_pattern(config.pattern_length, config.value_set, seed)
    traj, bubble = iterate(pattern, [config.memory] * config.steps, config.theta)
    return SweepRow(index, seed, bubble.flagged, bubble.peak_ratio, str(traj.terminal),
                    pattern, traj.final)


def sweep(config: SweepConfig, workers: int = 1) -> SweepReport:
    """Generate ``config.count`` patterns, iterate each, and collect bubble metrics.

    Pattern ``j`` uses seed ``config.seed + j``. Rows always come back in index
    order, whatever ``workers`` is.
    """
    jobs = [(config, j) for j in range(config.count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(job) for job in jobs]
    return SweepReport(config, rows)
