"""Permutations of {1..n+1}, random adjacent-transposition walks, enumeration and Monte Carlo.

The walk lives on S_{n+1} with generators s_1..s_n; ``n`` is always the
generator count, never the number of symbols.

Random streams
--------------
Shard ``k`` of a run with seed ``seed`` draws raw 64-bit words from
``numpy.random.PCG64(numpy.random.SeedSequence(seed, spawn_key=(k,)))``.
A raw word ``w`` is accepted iff ``w < 2**64 - (2**64 % n)`` and then maps
to generator ``s_{1 + w % n}``; rejected words are skipped. Walks consume
the accepted stream in order, ``t`` letters per walk.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceeded

DEFAULT_ENUM_BUDGET = 10**8
CHUNK_WALKS = 1 << 16


@dataclass(frozen=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a permutation of 1..{len(w)}: {w}")
        object.__setattr__(self, "word", w)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        """Identity of S_{n+1}."""
        return cls(tuple(range(1, n + 2)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        if "," in text or " " in text.strip():
            return cls(tuple(int(v) for v in text.replace(",", " ").split()))
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.word) - 1

    def __len__(self):
        return len(self.word)

    def __str__(self):
        if len(self.word) < 10:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))


def inversions_naive(p) -> int:
    w = p.word if isinstance(p, Permutation) else p
    m = len(w)
    return sum(1 for a in range(m) for b in range(a + 1, m) if w[a] > w[b])


def inversions_merge(p) -> int:
    """O(m log m) inversion count via merge sort."""
    w = list(p.word if isinstance(p, Permutation) else p)

    def sort_count(seq):
        if len(seq) <= 1:
            return seq, 0
        mid = len(seq) // 2
        left, a = sort_count(seq[:mid])
        right, b = sort_count(seq[mid:])
        merged = []
        count = a + b
        i = j = 0
        while i < len(left) and j < len(right):
            if left[i] <= right[j]:
                merged.append(left[i])
                i += 1
            else:
                merged.append(right[j])
                count += len(left) - i
                j += 1
        merged.extend(left[i:])
        merged.extend(right[j:])
        return merged, count

    return sort_count(w)[1]


def inversions(p) -> int:
    return inversions_merge(p)


def apply_generator(p: Permutation, i: int) -> Permutation:
    """Swap positions i and i+1 (1-based), i.e. right-multiply by s_i."""
    if not 1 <= i <= p.n:
        raise IndexError(f"generator s_{i} out of range 1..{p.n}")
    w = list(p.word)
    w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation(tuple(w))


def shard_bitgen(seed: int, shard: int) -> np.random.PCG64:
    return np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(shard),)))


def draw_generators(bitgen: np.random.BitGenerator, count: int, n: int) -> np.ndarray:
    """``count`` unbiased 0-based generator indices in [0, n) by rejection on raw 64-bit words."""
    span = 1 << 64
    limit = span - (span % n)
    out = np.empty(0, dtype=np.uint64)
    while out.size < count:
        raw = bitgen.random_raw(count - out.size)
        raw = np.asarray(raw, dtype=np.uint64)
        if limit < span:
            raw = raw[raw < np.uint64(limit)]
        out = np.concatenate([out, raw]) if out.size else raw
    return (out % np.uint64(n)).astype(np.int64)


def sample_walk(n: int, t: int, rng) -> Permutation:
    """Product of ``t`` uniform random generators applied to the identity.

    ``rng`` is a numpy ``Generator`` or ``BitGenerator``.
    """
    bitgen = getattr(rng, "bit_generator", rng)
    w = list(range(1, n + 2))
    for g in draw_generators(bitgen, t, n):
        w[g], w[g + 1] = w[g + 1], w[g]
    return Permutation(tuple(w))


def enum_budget() -> int:
    env = os.environ.get("INVWALK_ENUM_BUDGET")
    return int(env) if env else DEFAULT_ENUM_BUDGET


def enumerate_total_inversions(n: int, t: int, budget: int | None = None, *, partition: bool = False) -> int:
    """Exact sum of inv over all n**t generator words (n**t * E_nt).

    With ``partition=True`` the words are split by first letter and the
    partial sums added; the result is identical.
    """
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    budget = enum_budget() if budget is None else budget
    if n**t > budget:
        raise BudgetExceeded(
            f"enumeration of {n}^{t} = {n**t} words exceeds budget {budget} "
            "(set INVWALK_ENUM_BUDGET to raise it)"
        )
    if partition and t > 0:
        return sum(_kernels.enumerate_total(n, t, g) for g in range(n))
    return _kernels.enumerate_total(n, t)


@dataclass(frozen=True)
class WalkSpec:
    n: int
    t: int
    seed: int = 0
    samples: int = 10_000
    shards: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 1 <= self.shards <= self.samples:
            raise ValueError("shards must satisfy 1 <= shards <= samples")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def shard_sizes(self) -> list[int]:
        q, r = divmod(self.samples, self.shards)
        return [q + (1 if k < r else 0) for k in range(self.shards)]


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int


def _run_shard(args) -> tuple[int, int]:
    n, t, seed, shard, count = args
    bitgen = shard_bitgen(seed, shard)
    s1 = s2 = 0
    done = 0
    while done < count:
        c = min(CHUNK_WALKS, count - done)
        if t == 0:
            done += c
            continue
        gens = draw_generators(bitgen, c * t, n).reshape(c, t)
        inv = _kernels.walk_inversions(gens, n + 1)
        s1 += int(inv.sum())
        s2 += int((inv * inv).sum())
        done += c
    return s1, s2


def monte_carlo_E(spec: WalkSpec, workers: int = 1) -> McEstimate:
    """Sample mean of inv over ``spec.samples`` walks.

    Shard partial sums are exact integers combined in shard order, so the
    result depends only on (n, t, seed, samples, shards), not on ``workers``.
    """
    jobs = [(spec.n, spec.t, spec.seed, k, c) for k, c in enumerate(spec.shard_sizes())]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_shard, jobs))
    else:
        parts = [_run_shard(j) for j in jobs]
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    N = spec.samples
    mean = Fraction(s1, N)
    if N > 1:
        var = Fraction(s2 - s1 * s1 * Fraction(1, N), N - 1)
        stderr = sqrt(var / N)
    else:
        stderr = 0.0
    return McEstimate(float(mean), float(stderr), N, spec.seed)


def exact_mean_from_total(n: int, t: int, total: int) -> Fraction:
    return Fraction(total, n**t)


def all_words(n: int, t: int) -> Sequence[tuple[int, ...]]:
    """Every generator word of length t (1-based letters); for small cross-checks only."""
    from itertools import product

    return list(product(range(1, n + 1), repeat=t))
