# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; integer results match ``_pycore`` exactly, float results to rounding."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"


def walk_inversions(gens, Py_ssize_t size):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] g = np.ascontiguousarray(gens, dtype=np.int64)
    cdef Py_ssize_t walks = g.shape[0], t = g.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(walks, dtype=np.int64)
    cdef int *perm = <int *> malloc(size * sizeof(int))
    cdef Py_ssize_t w, s, k, i
    cdef long long inv
    cdef int a, b
    if perm == NULL:
        raise MemoryError()
    try:
        for w in range(walks):
            for k in range(size):
                perm[k] = <int> k
            inv = 0
            for s in range(t):
                i = g[w, s]
                a = perm[i]
                b = perm[i + 1]
                if a < b:
                    inv += 1
                else:
                    inv -= 1
                perm[i] = b
                perm[i + 1] = a
            out[w] = inv
    finally:
        free(perm)
    return out


def enumerate_total(int n, int t, int first=-1):
    if t == 0:
        return 0
    if t == 1 and first >= 0:
        return 1
    cdef int *perm = <int *> malloc((n + 1) * sizeof(int))
    cdef int *nxt = <int *> malloc(t * sizeof(int))
    cdef long long *invs = <long long *> malloc((t + 1) * sizeof(long long))
    cdef long long total = 0, inv
    cdef int depth, g, a, b, k, hi0, lo0
    if perm == NULL or nxt == NULL or invs == NULL:
        free(perm); free(nxt); free(invs)
        raise MemoryError()
    try:
        for k in range(n + 1):
            perm[k] = k
        lo0 = 0 if first < 0 else first
        hi0 = n if first < 0 else first + 1
        depth = 0
        nxt[0] = lo0
        invs[0] = 0
        while depth >= 0:
            if depth == t - 1:
                inv = invs[depth]
                for g in range(n):
                    if perm[g] < perm[g + 1]:
                        total += inv + 1
                    else:
                        total += inv - 1
                depth -= 1
                if depth >= 0:
                    # undo the move that led here
                    g = nxt[depth]
                    a = perm[g]; perm[g] = perm[g + 1]; perm[g + 1] = a
                    nxt[depth] += 1
                continue
            if nxt[depth] >= (hi0 if depth == 0 else n):
                depth -= 1
                if depth >= 0:
                    g = nxt[depth]
                    a = perm[g]; perm[g] = perm[g + 1]; perm[g + 1] = a
                    nxt[depth] += 1
                continue
            g = nxt[depth]
            a = perm[g]
            b = perm[g + 1]
            invs[depth + 1] = invs[depth] + (1 if a < b else -1)
            perm[g] = b
            perm[g + 1] = a
            depth += 1
            nxt[depth] = 0
    finally:
        free(perm); free(nxt); free(invs)
    return int(total)


cdef double _lower_sum(cnp.ndarray[cnp.float64_t, ndim=2] p, Py_ssize_t m, bint only_sub):
    # Neumaier compensated sum over the strict lower triangle (or its first subdiagonal)
    cdef double s = 0.0, c = 0.0, v, tmp
    cdef Py_ssize_t i, j, j0
    for i in range(1, m):
        j0 = i - 1 if only_sub else 0
        for j in range(j0, i):
            v = p[i, j]
            tmp = s + v
            if abs(s) >= abs(v):
                c += (s - tmp) + v
            else:
                c += (v - tmp) + s
            s = tmp
    return s + c


def heat_triangle_float(int n, int t, double x):
    cdef Py_ssize_t m = n + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.zeros((m, m))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] q = np.zeros((m, m))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] E = np.empty(t)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.empty(t)
    cdef Py_ssize_t i, j, s
    cdef double acc, v
    cdef int deg
    for i in range(m):
        p[i, i] = 0.5
        q[i, i] = 0.5
    for s in range(t):
        for i in range(1, m):
            for j in range(i):
                v = p[i, j]
                acc = 0.0
                deg = 0
                # up and right neighbours always lie in the closed triangle
                acc += p[i - 1, j]
                acc += p[i, j + 1]
                deg = 2
                if j > 0:
                    acc += p[i, j - 1]
                    deg += 1
                if i < m - 1:
                    acc += p[i + 1, j]
                    deg += 1
                q[i, j] = v + x * (acc - deg * v)
        p, q = q, p
        E[s] = _lower_sum(p, m, 0)
        e[s] = _lower_sum(p, m, 1)
    return E, e, p
