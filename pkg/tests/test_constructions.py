import math
from collections import Counter
from fractions import Fraction as F

import pytest

from marketeff import (
    BoundaryDependent,
    brute_force_optimal_gain,
    evolve_scenario,
    optimal_gain,
    optimal_strategy,
    validate,
)
from marketeff.constructions import (
    CapExceeded,
    FeedoffParams,
    expand_to_deterministic,
    feedoff_pattern,
    feedoff_report,
    figure_pattern,
    figure_patterns,
    named_pattern,
    parity_pattern,
)


def test_parity_pattern_m1():
    P = parity_pattern(1)
    assert P.scenarios == (
        (F(1, 4), (1, 1, 1)),
        (F(1, 4), (1, -1, -1)),
        (F(1, 4), (-1, 1, -1)),
        (F(1, 4), (-1, -1, 1)),
    )


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_parity_pattern_structure_and_hierarchy(m):
    P = parity_pattern(m)
    assert len(P.scenarios) == 2 ** (m + 1) and P.length == m + 2
    for _, o in P.scenarios:
        assert all(abs(v) == 1 for v in o)
        assert o[-1] == math.prod(o[:-1])
    assert optimal_gain(P, m) == 0
    assert optimal_gain(P, m + 1) == 1


def test_parity_cap():
    with pytest.raises(CapExceeded):
        parity_pattern(20)


def _symbolic(params):
    """Feed-off layout built from its definition with named variables, for cross-checking."""
    m, mp = params.m, params.m_prime
    X = [f"X{i}" for i in range(1, mp + 1)]
    Y = [f"Y{i}" for i in range(2, mp + 1)]
    first = X[:m - 1] + [("a", X[m - 1]), ("b",) + tuple(X[:m])] + Y[:-1] + [("c", Y[-1]), tuple(X[:m] + Y)]
    second = X[:mp - 1] + [("a'", X[mp - 1]), ("b",) + tuple(X)] + Y[:-1] + [("c", Y[-1]), ("-",) + tuple(X + Y)]
    return first + second


def test_feedoff_layout_m2_m3():
    params = FeedoffParams(2, 3)
    P = feedoff_pattern(params)
    assert P.length == 13 and len(P.scenarios) == 32
    assert _symbolic(params) == [
        "X1", ("a", "X2"), ("b", "X1", "X2"), "Y2", ("c", "Y3"), ("X1", "X2", "Y2", "Y3"),
        "X1", "X2", ("a'", "X3"), ("b", "X1", "X2", "X3"), "Y2", ("c", "Y3"), ("-", "X1", "X2", "X3", "Y2", "Y3"),
    ]
    consts = {"a": 10, "a'": 20, "b": 30, "c": 40, "-": -1}
    for bits_index, (prob, outcome) in enumerate(P.scenarios):
        assert prob == F(1, 32)
        # scenario order is itertools.product((1, -1), repeat=5) over X1..X3, Y2, Y3
        bits = [1 if (bits_index >> (4 - j)) & 1 == 0 else -1 for j in range(5)]
        env = dict(zip(["X1", "X2", "X3", "Y2", "Y3"], bits))
        for slot, value in zip(_symbolic(params), outcome):
            if isinstance(slot, str):
                assert value == env[slot]
            else:
                coeff = consts.get(slot[0], None)
                names = slot[1:] if coeff is not None else slot
                assert value == (coeff or 1) * math.prod(env[n] for n in names)


def test_feedoff_layout_m1_m2():
    P = feedoff_pattern(FeedoffParams(1, 2))
    assert P.length == 9
    for _, (a, b, c, d, e, f, g, h, i) in P.scenarios:
        x1, y2 = a / 10, c / 40
        x2 = f / 20
        assert (b, d, e, g, h, i) == (30 * x1, x1 * y2, x1, 30 * x1 * x2, 40 * y2, -x1 * x2 * y2)


@pytest.mark.parametrize("m, mp", [(m, mp) for mp in range(2, 5) for m in range(1, mp)])
def test_feedoff_patterns_validate(m, mp):
    assert validate(feedoff_pattern(FeedoffParams(m, mp))) == []


def test_feedoff_params_validation():
    with pytest.raises(ValueError):
        FeedoffParams(3, 3)
    with pytest.raises(ValueError):
        FeedoffParams(1, 2, a=30)
    with pytest.raises(ValueError):
        FeedoffParams(1, 2, a=1)


def test_feedoff_report_m2_m3():
    r = feedoff_report(FeedoffParams(2, 3))
    assert r.gains() == (1, 2, 4, 1, 2)
    assert r.inequality_holds


@pytest.mark.parametrize("m, mp", [(2, 4), (3, 4)])
def test_feedoff_report_larger(m, mp):
    r = feedoff_report(FeedoffParams(m, mp))
    assert r.inequality_holds
    assert r.gains() == (1, 2, 4, 1, 2)


@pytest.mark.parametrize("mp", [2, 3, 4])
def test_feedoff_m1_leaves_the_pattern_class(mp):
    # with m = 1 the memory-m' window at the block start sees (c*Y, -prod) from the previous
    # block; that context also predicts X1 later in the block, so its action is nonzero
    P = feedoff_pattern(FeedoffParams(1, mp))
    evolve_scenario(P, optimal_strategy(P, 1))
    with pytest.raises(BoundaryDependent):
        evolve_scenario(P, optimal_strategy(P, mp))
    with pytest.raises(BoundaryDependent):
        feedoff_report(FeedoffParams(1, mp))


def test_expand_parity_identity_order():
    E = expand_to_deterministic(parity_pattern(1))
    assert list(E.values) == [1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, 1]


def test_expand_single_scenario(fig2):
    assert expand_to_deterministic(fig2.as_scenarios()) == fig2


def test_expand_gains_differ_from_randomised():
    P = parity_pattern(1)
    E = expand_to_deterministic(P)
    # both sides frozen from the exhaustive oracle
    assert brute_force_optimal_gain(E, 2) == optimal_gain(E, 2) == 4
    assert optimal_gain(P, 2) == 1
    # at memory 1 the boundary windows make the concatenation predictable
    assert brute_force_optimal_gain(E, 1) == optimal_gain(E, 1) == 4
    assert optimal_gain(P, 1) == 0


def test_expand_replicates_by_probability():
    from marketeff import ScenarioPattern

    P = ScenarioPattern(((F(1, 3), (1, 2)), (F(2, 3), (-1, 0))))
    E = expand_to_deterministic(P, seed=3)
    blocks = Counter(tuple(E.values[i:i + 2]) for i in range(0, len(E), 2))
    assert len(E) == 3 * 2
    assert blocks == Counter({(1, 2): 1, (-1, 0): 2})
    assert expand_to_deterministic(P, seed=3) == E
    with pytest.raises(ValueError):
        expand_to_deterministic(P, order=[0, 0, 1])


def test_figure_catalog():
    figs = figure_patterns()
    assert list(figs["fig1"].values) == [-1, 1, -1, 1, -1, 1, 2]
    assert list(figs["fig2"].values) == [-2, 2, -2, 2, -2, 2, 3]
    with pytest.raises(KeyError):
        figure_pattern("fig9")
    assert named_pattern("parity:2") == parity_pattern(2)
