"""Exact recovery of the 1/n expansion of E_nt and the integer sequences d_r and g_r."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .closedform import catalan, semi_infinite_E
from .errors import TheoremViolation
from .heatflow import Variant, exact_E, run
from .numerics import InverseNExpansion, PolyX, binomial, format_rational, solve_vandermonde_inverse_n

SEQUENCES_HEADER = ("kind", "r", "value", "source_t", "source_n_set")


def extraction_ns(t: int) -> list[int]:
    start = max(t, 1)
    return list(range(start, start + t + 1))


def expand_E_in_inverse_n(t: int, verify_extra: int = 2) -> InverseNExpansion:
    """Fit E_nt = sum_r a_r / n**r from exact DP values at n = t..2t, then check two more n."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    ns = extraction_ns(t)
    expansion = solve_vandermonde_inverse_n(t, [(n, exact_E(n, t)) for n in ns])
    for n in range(ns[-1] + 1, ns[-1] + 1 + verify_extra):
        if expansion(n) != exact_E(n, t):
            raise TheoremViolation(f"expansion not polynomial in 1/n: mismatch at n={n}, t={t}")
    return expansion


@dataclass(frozen=True)
class DExtraction:
    t: int
    d: Mapping[int, Fraction]
    expansion: InverseNExpansion

    @property
    def n_set(self) -> list[int]:
        return extraction_ns(self.t)


def extract_d(t: int) -> DExtraction:
    if t < 2:
        raise ValueError(f"extract_d needs t >= 2, got {t}")
    a = expand_E_in_inverse_n(t)
    coeffs = a.coefficients
    if coeffs[0] != t or coeffs[1] != -2 * binomial(t, 2):
        raise TheoremViolation(
            f"leading terms ({format_rational(coeffs[0])}, {format_rational(coeffs[1])}) "
            f"differ from (t, -2C(t,2)) = ({t}, {-2 * binomial(t, 2)})"
        )
    d = {}
    for r in range(2, t + 1):
        value = ((-1) ** r * coeffs[r] - 2**r * catalan(r) * binomial(t, r + 1)) / (4 * binomial(t, r))
        if value.denominator != 1 or value < 0:
            raise TheoremViolation(f"d_{r} = {format_rational(value)} is not a non-negative integer (t={t})")
        d[r] = value
    return DExtraction(t, d, a)


@dataclass(frozen=True)
class GExtraction:
    t: int
    g: Mapping[int, Fraction]
    correction: PolyX
    n_values: tuple[int, ...]


def finite_correction(n: int, t: int) -> PolyX:
    """Triangle E_nt(x) minus the semi-infinite total."""
    return run(n, t, kind="poly", variant=Variant.TRIANGLE).E - semi_infinite_E(n, t)


def extract_g(t: int, n_values: Sequence[int]) -> GExtraction:
    if t < 2:
        raise ValueError(f"extract_g needs t >= 2, got {t}")
    n_values = tuple(int(n) for n in n_values)
    if len(set(n_values)) < 3:
        raise ValueError(f"need at least 3 distinct n values, got {n_values}")
    if any(n < t for n in n_values):
        raise ValueError(f"every n must satisfy n >= t={t}, got {n_values}")
    corrections = [finite_correction(n, t) for n in n_values]
    first = corrections[0]
    for n, c in zip(n_values, corrections):
        if c != first:
            raise TheoremViolation(f"g_r depends on n: correction at n={n_values[0]} is {first}, at n={n} is {c}")
    if first.coeff(0) != 0 or first.coeff(1) != 0:
        raise TheoremViolation(f"correction {first} has a nonzero x^0 or x^1 term")
    g = {r: (-1) ** r * first.coeff(r) / (2 * binomial(t, r)) for r in range(2, t + 1)}
    return GExtraction(t, g, first, n_values)


def theorem_reconstruct(n: int, t: int, d: DExtraction | Mapping[int, Fraction]) -> Fraction:
    """E_nt from the closed formula with the given d_r (valid for n >= t)."""
    if n < t:
        raise ValueError(f"formula requires n >= t, got n={n}, t={t}")
    dmap = d.d if isinstance(d, DExtraction) else d
    acc = Fraction(t) - Fraction(2, n) * binomial(t, 2)
    for r in range(2, t + 1):
        if r not in dmap:
            raise KeyError(f"missing d_{r}")
        bracket = 2**r * catalan(r) * binomial(t, r + 1) + 4 * dmap[r] * binomial(t, r)
        acc += Fraction((-1) ** r, n**r) * bracket
    return acc


def theorem_form_residual(n: int, t: int, d: Mapping[int, Fraction]) -> Fraction:
    """Exact E minus the closed formula, evaluated even where n < t."""
    acc = Fraction(t) - Fraction(2, n) * binomial(t, 2)
    for r in range(2, t + 1):
        acc += Fraction((-1) ** r, n**r) * (2**r * catalan(r) * binomial(t, r + 1) + 4 * d[r] * binomial(t, r))
    return exact_E(n, t) - acc


def _n_set(ns: Iterable[int]) -> str:
    return ";".join(str(n) for n in ns)


def d_rows(ex: DExtraction) -> list[tuple]:
    return [("d", r, format_rational(v), ex.t, _n_set(ex.n_set)) for r, v in sorted(ex.d.items())]


def g_rows(ex: GExtraction) -> list[tuple]:
    return [("g", r, format_rational(v), ex.t, _n_set(ex.n_values)) for r, v in sorted(ex.g.items())]


def write_sequences(path, d_t: int, g_t: int, provenance: Sequence[str] = ()) -> list[tuple]:
    """Write d_2..d_{d_t} and g_2..g_{g_t} to a CSV file with '#' provenance lines."""
    rows = d_rows(extract_d(d_t))
    rows += g_rows(extract_g(g_t, [g_t, g_t + 1, g_t + 2]))
    buf = io.StringIO()
    for line in provenance:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_NONE)
    w.writerow(SEQUENCES_HEADER)
    w.writerows(rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())
    return rows


def read_sequences(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))
