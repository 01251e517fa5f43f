"""Pattern generators: parity hierarchy, feed-off construction, figure patterns."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import DeterministicPattern, ScenarioPattern, _check_memory, to_rational
from .evolution import evolve_scenario
from .strategy import gain, optimal_gain, optimal_strategy

SCENARIO_CAP = 2 ** 20  # scenario count x pattern length


class CapExceeded(ValueError):
    pass


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _check_cap(n_scenarios: int, length: int, cap: int) -> None:
    if n_scenarios * length > cap:
        raise CapExceeded(f"{n_scenarios} scenarios x length {length} exceeds cap {cap}")


def parity_pattern(m: int, cap: int = SCENARIO_CAP) -> ScenarioPattern:
    """Fair +-1 coordinates X_1..X_{m+1} followed by their product."""
    _check_memory(m)
    _check_cap(2 ** (m + 1), m + 2, cap)
    prob = Fraction(1, 2 ** (m + 1))
    rows = []
    for xs in itertools.product((1, -1), repeat=m + 1):
        rows.append((prob, xs + (_prod(xs),)))
    return ScenarioPattern(tuple(rows))


def fair_coin() -> ScenarioPattern:
    return ScenarioPattern(((Fraction(1, 2), (1,)), (Fraction(1, 2), (-1,))))


@dataclass(frozen=True)
class FeedoffParams:
    m: int
    m_prime: int
    a: Fraction = Fraction(10)
    a_prime: Fraction = Fraction(20)
    b: Fraction = Fraction(30)
    c: Fraction = Fraction(40)

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "c"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        _check_memory(self.m)
        _check_memory(self.m_prime)
        if not self.m < self.m_prime:
            raise ValueError(f"need m < m', got m={self.m}, m'={self.m_prime}")
        mags = [abs(self.a), abs(self.a_prime), abs(self.b), abs(self.c)]
        if len(set(mags)) != 4:
            raise ValueError("constants a, a', b, c must differ in absolute value")
        if min(mags) <= 1:
            raise ValueError("constants a, a', b, c must exceed 1 in absolute value")

    @property
    def length(self) -> int:
        return (self.m + self.m_prime + 1) + (2 * self.m_prime + 1)


def _feedoff_row(params: FeedoffParams, xs: Sequence[int], ys: Sequence[int]) -> tuple:
    # xs = X_1..X_{m'}, ys = Y_2..Y_{m'}
    m, mp = params.m, params.m_prime
    px_m = _prod(xs[:m])
    px_mp = _prod(xs)
    py = _prod(ys)
    y_mid = list(ys[:-1])  # Y_2..Y_{m'-1}
    first = list(xs[:m - 1]) + [params.a * xs[m - 1], params.b * px_m] + y_mid + [params.c * ys[-1], px_m * py]
    second = list(xs[:mp - 1]) + [params.a_prime * xs[mp - 1], params.b * px_mp] + y_mid + [params.c * ys[-1], -px_mp * py]
    return tuple(first + second)


def feedoff_pattern(params: FeedoffParams, cap: int = SCENARIO_CAP) -> ScenarioPattern:
    n_vars = 2 * params.m_prime - 1
    _check_cap(2 ** n_vars, params.length, cap)
    prob = Fraction(1, 2 ** n_vars)
    rows = []
    for bits in itertools.product((1, -1), repeat=n_vars):
        xs, ys = bits[:params.m_prime], bits[params.m_prime:]
        rows.append((prob, _feedoff_row(params, xs, ys)))
    return ScenarioPattern(tuple(rows))


@dataclass(frozen=True)
class FeedoffReport:
    params: FeedoffParams
    gain_sm_on_p: Fraction
    gain_smp_on_p: Fraction
    optimal_mp_on_pm: Fraction
    optimal_m_on_pm: Fraction
    optimal_mp_on_pmp: Fraction

    @property
    def inequality_holds(self) -> bool:
        top = self.optimal_mp_on_pm
        return top > self.gain_smp_on_p and top > self.optimal_m_on_pm and top > self.optimal_mp_on_pmp

    def gains(self) -> tuple:
        return (self.gain_sm_on_p, self.gain_smp_on_p, self.optimal_mp_on_pm,
                self.optimal_m_on_pm, self.optimal_mp_on_pmp)


def feedoff_evolutions(params: FeedoffParams):
    """Return ``(P, s_m, P_m, s_m', P_m')`` using the tie-to-zero optimal strategies."""
    pattern = feedoff_pattern(params)
    s_m = optimal_strategy(pattern, params.m)
    s_mp = optimal_strategy(pattern, params.m_prime)
    return pattern, s_m, evolve_scenario(pattern, s_m), s_mp, evolve_scenario(pattern, s_mp)


def feedoff_report(params: FeedoffParams) -> FeedoffReport:
    pattern, s_m, p_m, s_mp, p_mp = feedoff_evolutions(params)
    return FeedoffReport(
        params=params,
        gain_sm_on_p=gain(s_m, pattern).gain,
        gain_smp_on_p=gain(s_mp, pattern).gain,
        optimal_mp_on_pm=optimal_gain(p_m, params.m_prime),
        optimal_m_on_pm=optimal_gain(p_m, params.m),
        optimal_mp_on_pmp=optimal_gain(p_mp, params.m_prime),
    )


def expand_to_deterministic(pattern: ScenarioPattern, order: Optional[Sequence[int]] = None,
                            seed: Optional[int] = None, cap: int = SCENARIO_CAP) -> DeterministicPattern:
    """Lay every scenario out, replicated by probability, as one long block.

    ``order`` permutes the replica list; ``seed`` shuffles it with the
    package's portable generator. Default is table order.
    """
    pattern.ensure_valid()
    denom = math.lcm(*(p.denominator for p in pattern.probabilities))
    replicas = []
    for p, outcome in pattern.scenarios:
        replicas.extend([outcome] * int(p * denom))
    _check_cap(len(replicas), pattern.length, cap)
    if order is not None and seed is not None:
        raise ValueError("give either an order or a seed, not both")
    if seed is not None:
        from .analytics import SplitMix64

        order = SplitMix64(seed).permutation(len(replicas))
    if order is not None:
        order = list(order)
        if sorted(order) != list(range(len(replicas))):
            raise ValueError(f"order must be a permutation of 0..{len(replicas) - 1}")
        replicas = [replicas[j] for j in order]
    return DeterministicPattern(tuple(v for o in replicas for v in o))


_FIGURES = {
    "fig1": (-1, 1, -1, 1, -1, 1, 2),
    "fig2": (-2, 2, -2, 2, -2, 2, 3),
}


def figure_patterns() -> dict:
    return {name: DeterministicPattern(vals) for name, vals in _FIGURES.items()}


def figure_pattern(name: str) -> DeterministicPattern:
    try:
        return DeterministicPattern(_FIGURES[name])
    except KeyError:
        raise KeyError(f"unknown figure pattern {name!r}; known: {sorted(_FIGURES)}") from None


def named_pattern(name: str):
    """Catalog lookup used by the CLI: fig1, fig2, faircoin, parity:M, feedoff:M,M'."""
    if name in _FIGURES:
        return figure_pattern(name)
    if name == "faircoin":
        return fair_coin()
    kind, _, arg = name.partition(":")
    if kind == "parity" and arg:
        return parity_pattern(int(arg))
    if kind == "feedoff" and arg:
        m, mp = (int(x) for x in arg.split(","))
        return feedoff_pattern(FeedoffParams(m, mp))
    raise KeyError(f"unknown pattern name {name!r}")
