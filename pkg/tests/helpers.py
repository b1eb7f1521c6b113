"""Shared brute-force oracles for the test suite.

Everything here is deliberately naive: box enumerations, BFS searches
and direct evaluations that the library code is checked against.
"""

from __future__ import annotations

import itertools

import numpy as np


def brute_minimal_solutions(positives, negatives, target, bound=None):
    """Minimal non-zero solutions by enumerating the box [0, bound]^(p+q).

    The bound defaults to the classical completeness bound
    ``max(1, (p+q) * dim * max_entry)``; it is only guaranteed adequate
    for the small instances used in the tests.
    """
    cols = [list(v) for v in positives] + [[-x for x in v] for v in negatives]
    n = len(cols)
    dim = len(target)
    if n == 0:
        return set()
    if bound is None:
        entries = [abs(x) for v in cols for x in v] + [abs(x) for x in target]
        bound = max(1, n * dim * max(entries, default=1))
    a = np.array(cols, dtype=np.int64).T  # dim x n
    t = np.array(target, dtype=np.int64)
    grids = np.indices([bound + 1] * n).reshape(n, -1)
    vals = a @ grids
    hits = np.all(vals == t[:, None], axis=0)
    sols = [tuple(int(x) for x in grids[:, i]) for i in np.nonzero(hits)[0]]
    sols = [s for s in sols if any(s)]
    return set(minimal_elements(sols))


def minimal_elements(tuples):
    out = []
    for s in tuples:
        if any(all(x >= y for x, y in zip(s, m)) and s != m for m in tuples):
            continue
        out.append(s)
    return out


def box_points(lo, hi, dim):
    return itertools.product(*(range(lo, hi + 1) for _ in range(dim)))


def eval_region(kind, u, a, modulus, z):
    s = sum(x * y for x, y in zip(u, z))
    if kind == "eq":
        return s == a
    if kind == "mod":
        return (s - a) % modulus == 0
    return s > a


def bfs_words(alphabet, max_len):
    """All words (tuples of letters) of length <= max_len."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in alphabet]
        out.extend(layer)
    return out
