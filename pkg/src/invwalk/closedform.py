"""Catalan/ballot counts, the semi-infinite solution, and the bounds on E_nt."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .numerics import PolyX, binomial, poly_eval
from .errors import BudgetExceeded

BRUTE_FORCE_MAX_R = 12


def catalan(r: int) -> int:
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return binomial(2 * r, r) // (r + 1)


@lru_cache(maxsize=None)
def ballot_walks(r: int, k: int) -> int:
    """Walks of 2r half-steps from sublevel k to 0 touching 0 only at the end."""
    if r < 1 or k < 1:
        raise ValueError(f"need r >= 1 and k >= 1, got r={r}, k={k}")
    return binomial(2 * r - 1, r - k) - binomial(2 * r - 1, r - k - 1)


def brute_force_catalan_walks(r: int, k: int) -> int:
    """Enumerate all 2**(2r) half-step sequences; independent check on :func:`ballot_walks`."""
    if r > BRUTE_FORCE_MAX_R:
        raise BudgetExceeded(f"brute force limited to r <= {BRUTE_FORCE_MAX_R} (2^(2r) sequences), got r={r}")
    # work in half-units: start at 2k, steps of +-1, first reach 0 at the last step
    count = 0
    for steps in product((1, -1), repeat=2 * r):
        pos = 2 * k
        ok = True
        for s in steps[:-1]:
            pos += s
            if pos <= 0:
                ok = False
                break
        if ok and pos + steps[-1] == 0:
            count += 1
    return count


def semi_infinite_p(k: int, t: int) -> PolyX:
    """Sublevel-k temperature after t steps of the semi-infinite model, as a polynomial in x."""
    if k < 1 or t < 0:
        raise ValueError(f"need k >= 1 and t >= 0, got k={k}, t={t}")
    coeffs = [Fraction(0)] * (t + 1)
    for r in range(k, t + 1):
        sign = -1 if (r + k) % 2 else 1
        coeffs[r] = Fraction(sign * binomial(t, r) * 2**r * ballot_walks(r, k), 2)
    return PolyX(coeffs)


def semi_infinite_E(n: int, t: int) -> PolyX:
    """Heat below an n-sized diagonal in the semi-infinite model."""
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    coeffs = [Fraction(0)] * (t + 1)
    if t >= 1:
        coeffs[1] = Fraction(n * t)
    for r in range(2, t + 1):
        coeffs[r] -= Fraction(n + 1, 2) * (-1) ** r * binomial(t, r) * 2**r * catalan(r - 1)
    return PolyX(coeffs)


def _theorem_head(n: int, t: int) -> Fraction:
    return Fraction(t) - Fraction(2, n) * binomial(t, 2)


def theorem_lower_bound(n: int, t: int) -> Fraction:
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    acc = _theorem_head(n, t)
    for r in range(2, t + 1):
        bracket = 2**r * catalan(r) * binomial(t, r + 1) - 2 ** (r - 1) * catalan(r - 1) * binomial(t, r)
        acc += Fraction((-1) ** r * bracket, n**r)
    return acc


def theorem_upper_bound(n: int, t: int) -> Fraction:
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    acc = _theorem_head(n, t)
    for r in range(2, t + 1):
        acc += Fraction((-1) ** r * 2**r * catalan(r) * binomial(t, r + 1), n**r)
    return acc


def iterated_upper_bound(n: int, t: int) -> PolyX:
    """ntx - 2x * sum_{tau<t} e_tau with semi-infinite subdiagonal sums e_tau = n p_1(tau)."""
    if n < 1 or t < 0:
        raise ValueError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    x = PolyX.x()
    acc = PolyX()
    for tau in range(1, t):
        acc = acc + n * semi_infinite_p(1, tau)
    return n * t * x - 2 * x * acc


def lower_bound_at(n: int, t: int, x0) -> Fraction:
    return poly_eval(semi_infinite_E(n, t), x0)


def upper_bound_at(n: int, t: int, x0) -> Fraction:
    return poly_eval(iterated_upper_bound(n, t), x0)
