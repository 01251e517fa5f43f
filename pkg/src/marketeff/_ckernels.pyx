# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel for the brute-force strategy oracle."""

from libc.stdlib cimport malloc, free

# upper bound on contexts whose joint tables are tabulated up front
cdef enum:
    LOW_BLOCK = 12


cdef bint _next_table(signed char *actions, int k) nogil:
    # ternary odometer over {-1, 0, 1}; False once it wraps
    cdef int j = 0
    while j < k and actions[j] == 1:
        actions[j] = -1
        j += 1
    if j == k:
        return False
    actions[j] += 1
    return True


cdef long long _table_gain(const signed char *actions, const long long[:] ctx_ids,
                           const signed char[:] target_signs, const long long[:] weights,
                           int lo, int hi) nogil:
    """Sum of weight * sign(action * target) over entries whose context is in [lo, hi)."""
    cdef Py_ssize_t e
    cdef long long total = 0
    cdef long long c
    for e in range(ctx_ids.shape[0]):
        c = ctx_ids[e]
        if lo <= c < hi:
            # a product of values in {-1, 0, 1} is its own sign
            total += actions[c - lo] * target_signs[e] * weights[e]
    return total


def max_table_gain(const long long[:] ctx_ids, const signed char[:] target_signs,
                   const long long[:] weights, int k):
    """Maximum over all 3**k action tables of sum_e weights[e] * sign(a[ctx[e]] * t[e]).

    The entries are split by context into a low block and a high block; the
    low block's tables are enumerated once, and since the two blocks share no
    context, each high table only needs the best low partial gain.
    """
    # balanced split keeps both enumerations near 3**(k/2)
    cdef int low = (k + 1) // 2 if (k + 1) // 2 < LOW_BLOCK else LOW_BLOCK
    cdef int high = k - low
    cdef Py_ssize_t n_low = 1
    cdef Py_ssize_t j
    cdef int i
    cdef long long hg, low_best, best = 0
    cdef bint first = True
    cdef signed char *low_actions
    cdef signed char *high_actions
    cdef long long *low_gain
    if k == 0:
        return 0
    for i in range(low):
        n_low *= 3
    low_actions = <signed char *> malloc(low * sizeof(signed char))
    high_actions = <signed char *> malloc((high + 1) * sizeof(signed char))
    low_gain = <long long *> malloc(n_low * sizeof(long long))
    if low_actions == NULL or high_actions == NULL or low_gain == NULL:
        free(low_actions)
        free(high_actions)
        free(low_gain)
        raise MemoryError()
    try:
        with nogil:
            for i in range(low):
                low_actions[i] = -1
            for j in range(n_low):
                low_gain[j] = _table_gain(low_actions, ctx_ids, target_signs, weights, 0, low)
                _next_table(low_actions, low)
            low_best = low_gain[0]
            for j in range(1, n_low):
                if low_gain[j] > low_best:
                    low_best = low_gain[j]
            for i in range(high):
                high_actions[i] = -1
            while True:
                hg = _table_gain(high_actions, ctx_ids, target_signs, weights, low, k) + low_best
                if first or hg > best:
                    best = hg
                    first = False
                if not _next_table(high_actions, high):
                    break
        return best
    finally:
        free(low_actions)
        free(high_actions)
        free(low_gain)
