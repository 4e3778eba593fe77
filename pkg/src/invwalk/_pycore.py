"""Pure-Python/numpy kernels with the same signatures as the compiled ``_core``."""
from __future__ import annotations

from math import fsum

import numpy as np

BACKEND = "python"


def walk_inversions(gens, size):
    """Inversion count after applying each row of 0-based generator indices to the identity.

    ``gens`` has shape (walks, t); generator ``g`` swaps positions g and g+1.
    """
    gens = np.asarray(gens)
    walks, t = gens.shape
    perms = np.tile(np.arange(size, dtype=np.int32), (walks, 1))
    inv = np.zeros(walks, dtype=np.int64)
    rows = np.arange(walks)
    for s in range(t):
        g = gens[:, s].astype(np.intp)
        left = perms[rows, g]
        right = perms[rows, g + 1]
        inv += np.where(left < right, 1, -1)
        perms[rows, g] = right
        perms[rows, g + 1] = left
    return inv


def enumerate_total(n, t, first=-1):
    """Sum of inversion counts over all n**t words (optionally only those starting with ``first``)."""
    if t == 0:
        return 0
    perm = list(range(n + 1))
    letters = range(n)

    def leaf_sum(inv):
        # last letter: no need to apply it, just read the inversion delta
        s = 0
        for g in letters:
            s += inv + 1 if perm[g] < perm[g + 1] else inv - 1
        return s

    def dfs(depth, inv):
        if depth == t - 1:
            return leaf_sum(inv)
        s = 0
        for g in (letters if depth or first < 0 else (first,)):
            a, b = perm[g], perm[g + 1]
            perm[g], perm[g + 1] = b, a
            s += dfs(depth + 1, inv + 1 if a < b else inv - 1)
            perm[g], perm[g + 1] = a, b
        return s

    if t == 1 and first >= 0:
        return 1
    return dfs(0, 0)


def heat_triangle_float(n, t, x):
    """Float heat flow on the lower triangle with the diagonal pinned at 1/2.

    Returns (E after each step, subdiagonal sum after each step, final (n+1)x(n+1)
    array holding the lower triangle and diagonal; upper part is zero).
    """
    m = n + 1
    p = np.zeros((m, m))
    np.fill_diagonal(p, 0.5)
    lower = np.tril(np.ones((m, m), dtype=bool), -1)
    # neighbour counts inside the closed triangle (diagonal included)
    inside = np.tril(np.ones((m, m), dtype=bool))
    deg = np.zeros((m, m))
    deg[1:, :] += inside[:-1, :]
    deg[:-1, :] += inside[1:, :]
    deg[:, 1:] += inside[:, :-1]
    deg[:, :-1] += inside[:, 1:]
    E = np.empty(t)
    e = np.empty(t)
    sub = np.arange(1, m)
    for s in range(t):
        nb = np.zeros((m, m))
        nb[1:, :] += p[:-1, :]
        nb[:-1, :] += p[1:, :]
        nb[:, 1:] += p[:, :-1]
        nb[:, :-1] += p[:, 1:]
        q = p + x * (nb - deg * p)
        q[~inside] = 0.0
        np.fill_diagonal(q, 0.5)
        p = q
        E[s] = fsum(p[lower])
        e[s] = fsum(p[sub, sub - 1])
    return E, e, p
