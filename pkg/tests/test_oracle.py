import itertools
import random

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from marketeff import DeterministicPattern, brute_force_optimal_gain, optimal_gain
from marketeff import _pykernels, kernels
from marketeff.constructions import parity_pattern
from marketeff.oracle import OracleCapExceeded

from strategies import any_patterns

try:
    from marketeff import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "python")


def test_brute_force_examples(fig2, faircoin):
    assert brute_force_optimal_gain(fig2, 2) == 5
    assert brute_force_optimal_gain(faircoin, 2) == 0
    assert brute_force_optimal_gain(DeterministicPattern((1, -1, 1, -1)), 1) == 4


def test_cap_is_enforced():
    with pytest.raises(OracleCapExceeded):
        brute_force_optimal_gain(parity_pattern(3), 4, cap=3 ** 15)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_parity_hierarchy_by_oracle(m):
    assert brute_force_optimal_gain(parity_pattern(m), m) == 0
    assert brute_force_optimal_gain(parity_pattern(m), m + 1) == 1


@settings(max_examples=100, deadline=None)
@given(any_patterns(), st.integers(1, 3))
def test_oracle_equivalence(pattern, m):
    try:
        expected = brute_force_optimal_gain(pattern, m, cap=3 ** 12)
    except OracleCapExceeded:
        assume(False)
    assert expected == optimal_gain(pattern, m)


def _reference_max(ctx, signs, weights, k):
    best = None
    for table in itertools.product((-1, 0, 1), repeat=k):
        total = sum(w * np.sign(table[c] * t) for c, t, w in zip(ctx, signs, weights))
        best = total if best is None else max(best, total)
    return 0 if best is None else int(best)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("k", [0, 1, 3, 6, 10, 13])
def test_kernels_agree_with_reference(backend, k):
    rng = random.Random(k)
    n = 2 * k + 1
    ctx = [rng.randrange(k) for _ in range(n)] if k else []
    signs = [rng.choice((-1, 0, 1)) for _ in ctx]
    weights = [rng.randrange(1, 50) for _ in ctx]
    args = (np.asarray(ctx, np.int64), np.asarray(signs, np.int8), np.asarray(weights, np.int64), k)
    got = backend.max_table_gain(*args)
    if k <= 6:
        assert got == _reference_max(ctx, signs, weights, k)
    # the optimum of a table-separable sum, computed independently
    per_ctx = {}
    for c, t, w in zip(ctx, signs, weights):
        per_ctx[c] = per_ctx.get(c, 0) + t * w
    assert got == sum(abs(v) for v in per_ctx.values())


def test_exact_kernel_handles_big_weights():
    big = 2 ** 70
    assert _pykernels.max_table_gain_exact([0, 0, 1], [1, -1, 1], [big, 1, big], 2) == 2 * big - 1
