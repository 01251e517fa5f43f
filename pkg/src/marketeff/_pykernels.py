"""Uncompiled twin of ``_ckernels``; same results, numpy-vectorised."""

import itertools

import numpy as np

# contexts enumerated jointly per numpy block
_BLOCK = 9


def max_table_gain(ctx_ids, target_signs, weights, k):
    ctx_ids = np.asarray(ctx_ids, dtype=np.int64)
    target_signs = np.asarray(target_signs, dtype=np.int8)
    weights = np.asarray(weights, dtype=np.int64)
    if k == 0:
        return 0
    low = min(k, _BLOCK)
    # rows: every action assignment of contexts 0..low-1
    low_tables = np.array(list(itertools.product((-1, 0, 1), repeat=low)), dtype=np.int8)
    in_low = ctx_ids < low
    lo_ctx, lo_t, lo_w = ctx_ids[in_low], target_signs[in_low], weights[in_low]
    hi_ctx, hi_t, hi_w = ctx_ids[~in_low] - low, target_signs[~in_low], weights[~in_low]
    low_gain = (np.sign(low_tables[:, lo_ctx] * lo_t) * lo_w).sum(axis=1, dtype=np.int64)
    # the blocks share no context, so every high table pairs with the best low one
    low_best = int(low_gain.max())
    best = None
    for high in itertools.product((-1, 0, 1), repeat=k - low):
        high_gain = 0
        for c, t, w in zip(hi_ctx.tolist(), hi_t.tolist(), hi_w.tolist()):
            high_gain += w * ((high[c] * t > 0) - (high[c] * t < 0))
        cand = low_best + high_gain
        if best is None or cand > best:
            best = cand
    return best


def max_table_gain_exact(ctx_ids, target_signs, weights, k):
    """Arbitrary-precision variant for weights that overflow 64 bits."""
    best = None
    entries = list(zip(ctx_ids, target_signs, weights))
    for table in itertools.product((-1, 0, 1), repeat=k):
        total = 0
        for c, t, w in entries:
            prod = table[c] * t
            total += w if prod > 0 else (-w if prod < 0 else 0)
        if best is None or total > best:
            best = total
    return 0 if best is None else best
