"""Exact rational scalars, dense polynomials in x, and the 1/n expansion solver.

Rationals are :class:`fractions.Fraction`; this module adds the
serialization rules used throughout the package ("p/q", denominator
always emitted) and a small immutable polynomial type.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "rat",
    "format_rational",
    "parse_rational",
    "PolyX",
    "poly_arith",
    "poly_eval",
    "InverseNExpansion",
    "solve_vandermonde_inverse_n",
    "binomial",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")


def rat(num: int, den: int = 1) -> Fraction:
    """Lowest-terms rational ``num/den`` with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(int(num), int(den))


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer. Decimal and float notation is rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return rat(num, den)


def binomial(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    from math import comb

    return comb(a, b)


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class PolyX:
    """Dense univariate polynomial with exact rational coefficients.

    ``coefficients[r]`` is the coefficient of ``x**r``. Trailing zeros are
    trimmed, so the zero polynomial has ``coefficients == ()``.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        object.__setattr__(self, "coefficients", _trim(coefficients))

    def __setattr__(self, name, value):
        raise AttributeError("PolyX is immutable")

    @classmethod
    def x(cls) -> "PolyX":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "PolyX":
        return cls((c,))

    @classmethod
    def monomial(cls, r: int, c=1) -> "PolyX":
        return cls([0] * r + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def coeff(self, r: int) -> Fraction:
        if 0 <= r < len(self.coefficients):
            return self.coefficients[r]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    @staticmethod
    def _coerce(other) -> "PolyX | None":
        if isinstance(other, PolyX):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyX((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coefficients, o.coefficients
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return PolyX(res)

    __radd__ = __add__

    def __neg__(self):
        return PolyX(-c for c in self.coefficients)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyX(c * other for c in self.coefficients)
        if not isinstance(other, PolyX):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return PolyX()
        res = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                res[i + j] += ca * cb
        return PolyX(res)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coefficients == o.coefficients

    def __hash__(self):
        return hash(("PolyX", self.coefficients))

    def __call__(self, x0):
        return poly_eval(self, x0)

    def __repr__(self):
        return f"PolyX({str(self)!r})"

    def __str__(self):
        """Canonical compact form, e.g. ``8x-8x^2`` or ``1/2-3/2x``."""
        if not self.coefficients:
            return "0"
        out = []
        for r, c in enumerate(self.coefficients):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mag.denominator == 1:
                num = str(mag.numerator)
            else:
                num = f"{mag.numerator}/{mag.denominator}"
            if r == 0:
                term = num
            else:
                mono = "x" if r == 1 else f"x^{r}"
                term = mono if mag == 1 else num + mono
            out.append((sign, term))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, term in out[1:]:
            s += sign + term
        return s

    def to_dump(self) -> str:
        """Machine form ``c0 + c1*x + c2*x^2`` with every coefficient as p/q."""
        if not self.coefficients:
            return "0/1"
        parts = []
        for r, c in enumerate(self.coefficients):
            q = format_rational(c)
            if r == 0:
                parts.append(q)
            elif r == 1:
                parts.append(f"{q}*x")
            else:
                parts.append(f"{q}*x^{r}")
        return " + ".join(parts)

    @classmethod
    def from_dump(cls, text: str) -> "PolyX":
        coeffs: dict[int, Fraction] = {}
        for part in text.split(" + "):
            part = part.strip()
            if "*x" in part:
                c, _, mono = part.partition("*")
                r = 1 if mono == "x" else int(mono.split("^", 1)[1])
            else:
                c, r = part, 0
            coeffs[r] = coeffs.get(r, Fraction(0)) + parse_rational(c)
        top = max(coeffs) if coeffs else -1
        return cls(coeffs.get(r, 0) for r in range(top + 1))


def poly_arith(a: PolyX, b, op: str) -> PolyX:
    """Apply ``op`` in {"add", "sub", "mul", "scale"}; ``scale`` takes a rational ``b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a * Fraction(b)
    raise ValueError(f"unknown polynomial op {op!r}")


def poly_eval(p: PolyX, x0) -> Fraction:
    """Horner evaluation. Exact for rational ``x0``."""
    acc = Fraction(0) if not isinstance(x0, float) else 0.0
    for c in reversed(p.coefficients):
        acc = acc * x0 + (c if not isinstance(x0, float) else float(c))
    return acc


@dataclass(frozen=True)
class InverseNExpansion:
    """Coefficients ``a_0..a_t`` of ``n -> sum_r a_r / n**r``."""

    t: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.t + 1:
            raise ValueError(
                f"expansion for t={self.t} needs {self.t + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )

    def __call__(self, n: int) -> Fraction:
        inv = Fraction(1, n)
        acc = Fraction(0)
        for a in reversed(self.coefficients):
            acc = acc * inv + a
        return acc


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    m = len(rhs)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        piv = aug[col][col]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / piv
                row_r, row_c = aug[r], aug[col]
                for c in range(col, m + 1):
                    row_r[c] -= f * row_c[c]
    return [aug[i][m] / aug[i][i] for i in range(m)]


def solve_vandermonde_inverse_n(
    t: int, samples: Sequence[tuple[int, Fraction]]
) -> InverseNExpansion:
    """Recover ``a_0..a_t`` from ``t+1`` exact samples ``(n, value)`` by Gaussian elimination."""
    if len(samples) != t + 1:
        raise ValueError(f"need exactly {t + 1} samples for t={t}, got {len(samples)}")
    ns = [int(n) for n, _ in samples]
    if len(set(ns)) != len(ns):
        raise ValueError(f"duplicate n in samples: {ns}")
    for n in ns:
        if n < t or n < 1:
            raise ValueError(f"n={n} outside Theorem validity range (n >= t={t})")
    matrix = [[Fraction(1, n**r) for r in range(t + 1)] for n in ns]
    rhs = [Fraction(v) for _, v in samples]
    return InverseNExpansion(t, tuple(_solve_exact(matrix, rhs)))
