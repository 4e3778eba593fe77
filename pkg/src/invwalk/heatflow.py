"""Heat-flow dynamic program for the order probabilities p_ij = Prob(pi_i < pi_j).

Each step every cell sends a fraction ``x`` of its heat to each neighbour
(synchronous update). With ``x = 1/n`` the lower-triangle total is the
expected number of inversions after t steps.

Model variants
--------------
full-grid-cross-diagonal
    (n+1)x(n+1) off-diagonal cells; (j+1, j) and (j, j+1) are joined
    across the diagonal. Diagonal cells hold 1/2 but are not connected.
grid-hot-diagonal
    Plain 4-neighbour grid with the diagonal pinned at 1/2.
triangle-hot-boundary
    Closed lower triangle, diagonal pinned, other edges insulated.
diamond-hot-boundary
    The triangle unfolded by cell-centred reflections across its two
    insulated legs; every image of the diagonal is pinned.
semi-infinite
    One value per sublevel k = i - j, truncated at depth K.

Scalars are ``float``, ``Fraction`` ("rational") or :class:`PolyX` ("poly").
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import _kernels
from .numerics import PolyX, format_rational

HALF = Fraction(1, 2)
MAX_X = Fraction(1, 4)


class Variant(enum.Enum):
    FULL_GRID = "full-grid-cross-diagonal"
    GRID = "grid-hot-diagonal"
    TRIANGLE = "triangle-hot-boundary"
    DIAMOND = "diamond-hot-boundary"
    SEMI_INFINITE = "semi-infinite"


KINDS = ("float", "rational", "poly")


def kind_of(value) -> str:
    if isinstance(value, PolyX):
        return "poly"
    if isinstance(value, float):
        return "float"
    if isinstance(value, (int, Fraction)):
        return "rational"
    raise TypeError(f"unsupported scalar {value!r}")


def constant(kind: str, value) -> object:
    if kind == "float":
        return float(value)
    if kind == "rational":
        return Fraction(value)
    if kind == "poly":
        return PolyX.const(Fraction(value))
    raise ValueError(f"unknown scalar kind {kind!r}")


def default_x(kind: str, n: int):
    """The walk's conductivity 1/n, or the symbol x for poly runs."""
    if kind == "poly":
        return PolyX.x()
    return constant(kind, Fraction(1, n))


@dataclass(frozen=True)
class OrderField:
    """Immutable snapshot of the heat values.

    ``cells`` maps (i, j) to a scalar for the grid, triangle and diamond
    variants (1-based indices; diamond uses unfolded coordinates), and is a
    tuple indexed by sublevel 0..K for the semi-infinite variant.
    """

    n: int
    variant: Variant
    kind: str
    cells: object
    depth: int | None = None  # K for semi-infinite
    pinned: frozenset = field(default=frozenset(), repr=False)

    def __getitem__(self, key):
        if self.variant is Variant.SEMI_INFINITE:
            if key > self.depth:
                return constant(self.kind, 0)
            return self.cells[key]
        return self.cells[key]

    def lower_cells(self) -> Iterator[tuple[int, int]]:
        """Strict lower triangle of the base (n+1)x(n+1) matrix."""
        m = self.n + 1
        for i in range(2, m + 1):
            for j in range(1, i):
                yield (i, j)

    def matrix(self) -> list[list]:
        """Dense (n+1)x(n+1) view; for the triangle the upper part is 1 - p_ji."""
        m = self.n + 1
        if self.variant is Variant.SEMI_INFINITE:
            raise ValueError("semi-infinite field has no matrix view")
        one = constant(self.kind, 1)
        rows = []
        for i in range(1, m + 1):
            row = []
            for j in range(1, m + 1):
                if (i, j) in self.cells:
                    row.append(self.cells[(i, j)])
                else:
                    row.append(one - self.cells[(j, i)])
            rows.append(row)
        return rows

    def restrict_to_triangle(self) -> dict:
        m = self.n + 1
        return {(i, j): self.cells[(i, j)] for i in range(1, m + 1) for j in range(1, i + 1)}


def _reflect_left(c):
    i, j = c
    return (i, 1 - j)


def _reflect_bottom(c, n):
    i, j = c
    return (2 * n + 3 - i, j)


def _triangle_coords(n):
    m = n + 1
    return [(i, j) for i in range(1, m + 1) for j in range(1, i + 1)]


def diamond_coords(n: int) -> tuple[set, set]:
    """Unfolded coordinates of the diamond and the subset pinned at 1/2."""
    tri = _triangle_coords(n)
    cells, pinned = set(), set()
    for c in tri:
        for img in (c, _reflect_left(c), _reflect_bottom(c, n), _reflect_bottom(_reflect_left(c), n)):
            cells.add(img)
            if c[0] == c[1]:
                pinned.add(img)
    return cells, pinned


def init_field(n: int, variant: Variant | str, kind: str = "rational", depth: int | None = None) -> OrderField:
    """State at t = 0: zeros below, 1/2 on the (pinned) diagonal, ones above for grids."""
    variant = Variant(variant)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if kind not in KINDS:
        raise ValueError(f"unknown scalar kind {kind!r}")
    zero, half, one = constant(kind, 0), constant(kind, HALF), constant(kind, 1)
    m = n + 1
    if variant is Variant.SEMI_INFINITE:
        if depth is None or depth < 1:
            raise ValueError(f"semi-infinite truncation depth K must be >= 1, got {depth}")
        return OrderField(n, variant, kind, (half,) + (zero,) * depth, depth=depth)
    if variant in (Variant.GRID, Variant.FULL_GRID):
        cells = {}
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                cells[(i, j)] = zero if i > j else (half if i == j else one)
        diag = frozenset((i, i) for i in range(1, m + 1))
        return OrderField(n, variant, kind, cells, pinned=diag)
    if variant is Variant.TRIANGLE:
        cells = {c: (half if c[0] == c[1] else zero) for c in _triangle_coords(n)}
        diag = frozenset((i, i) for i in range(1, m + 1))
        return OrderField(n, variant, kind, cells, pinned=diag)
    return unfold_to_diamond(n, kind)


def unfold_to_diamond(n: int, kind: str = "rational", base: OrderField | None = None) -> OrderField:
    """Diamond variant built from four mirror copies of the closed triangle.

    With ``base`` (a triangle field) the copies carry its values; otherwise
    the t = 0 triangle is used.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if base is None:
        base = init_field(n, Variant.TRIANGLE, kind)
    kind = base.kind
    cells = {}
    for c, v in base.cells.items():
        for img in (c, _reflect_left(c), _reflect_bottom(c, n), _reflect_bottom(_reflect_left(c), n)):
            cells[img] = v
    _, pinned = diamond_coords(n)
    return OrderField(n, Variant.DIAMOND, kind, cells, pinned=frozenset(pinned))


_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _neighbours(f: OrderField, c):
    i, j = c
    cells = f.cells
    if f.variant is Variant.FULL_GRID:
        if i == j:
            return []
        out = []
        for di, dj in _STEPS:
            nb = (i + di, j + dj)
            if nb in cells and nb[0] != nb[1]:
                out.append(nb)
        if abs(i - j) == 1:
            out.append((j, i))
        return out
    return [(i + di, j + dj) for di, dj in _STEPS if (i + di, j + dj) in cells]


def step(f: OrderField, x) -> OrderField:
    """One synchronous heat-flow step with conductivity ``x``."""
    xk = kind_of(x)
    if xk != f.kind:
        raise TypeError(f"scalar kind mismatch: field is {f.kind}, x is {xk}")
    if f.kind == "rational":
        x = Fraction(x)
    if f.variant is Variant.SEMI_INFINITE:
        p = f.cells
        K = f.depth
        zero = constant(f.kind, 0)
        new = [p[0]]
        for k in range(1, K + 1):
            below = p[k + 1] if k < K else zero
            new.append(p[k] + x * (2 * p[k - 1] + 2 * below - 4 * p[k]))
        return OrderField(f.n, f.variant, f.kind, tuple(new), depth=K)
    cells = f.cells
    new = {}
    for c, v in cells.items():
        if c in f.pinned:
            new[c] = v
            continue
        nbs = _neighbours(f, c)
        acc = sum((cells[nb] for nb in nbs), constant(f.kind, 0))
        new[c] = v + x * (acc - len(nbs) * v)
    return OrderField(f.n, f.variant, f.kind, new, depth=f.depth, pinned=f.pinned)


def subdiagonal_heat(f: OrderField):
    """Total heat strictly below the diagonal of the base matrix."""
    if f.variant is Variant.SEMI_INFINITE:
        raise ValueError("subdiagonal_heat is undefined for the semi-infinite model; use closedform.semi_infinite_E")
    return sum((f.cells[c] for c in f.lower_cells()), constant(f.kind, 0))


def first_subdiagonal_sum(f: OrderField):
    """Sum of p_{j+1,j}, the cells next to the hot diagonal."""
    if f.variant is Variant.SEMI_INFINITE:
        return f.n * f.cells[1]
    return sum((f.cells[(j + 1, j)] for j in range(1, f.n + 1)), constant(f.kind, 0))


def total_heat(f: OrderField):
    return sum(f.cells.values(), constant(f.kind, 0))


def semi_infinite_total(f: OrderField):
    """Heat below the diagonal of an n-sized triangle under the semi-infinite model."""
    acc = constant(f.kind, 0)
    for k in range(1, f.n + 1):
        acc = acc + (f.n + 1 - k) * f[k]
    return acc


@dataclass(frozen=True)
class HeatRunReport:
    """``energies[s]`` and ``subdiagonal_sums[s]`` are E and e after step s+1."""

    n: int
    t: int
    x: object
    variant: Variant
    energies: tuple
    subdiagonal_sums: tuple
    final: OrderField

    @property
    def E(self):
        if self.energies:
            return self.energies[-1]
        return constant(self.final.kind, 0)


def run(
    n: int,
    t: int,
    x=None,
    variant: Variant | str = Variant.TRIANGLE,
    kind: str | None = None,
    depth: int | None = None,
    fast: bool = True,
) -> HeatRunReport:
    """Run t steps from the initial state.

    ``x`` defaults to 1/n (or the symbol for ``kind="poly"``). Float runs on
    the grid and triangle variants go through the compiled kernel when
    ``fast`` is set.
    """
    variant = Variant(variant)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if kind is None:
        kind = "rational" if x is None else kind_of(x)
    if x is None:
        x = default_x(kind, n)
    if kind_of(x) != kind:
        raise TypeError(f"scalar kind mismatch: kind={kind}, x is {kind_of(x)}")
    # beyond 1/4 a cell can ship out more than it holds; 1/n itself is always a walk
    walk_x = 1.0 / n if kind == "float" else Fraction(1, n)
    if kind in ("float", "rational") and not (0 <= x <= MAX_X or x == walk_x):
        raise ValueError(f"numeric conductivity must lie in [0, 1/4] or equal 1/n, got {x}")
    if variant is Variant.SEMI_INFINITE and depth is None:
        depth = t + 1
    if fast and kind == "float" and variant in (Variant.TRIANGLE, Variant.GRID):
        return _run_float_kernel(n, t, x, variant)
    f = init_field(n, variant, kind, depth=depth)
    energies, subs = [], []
    for _ in range(t):
        f = step(f, x)
        if variant is Variant.SEMI_INFINITE:
            energies.append(semi_infinite_total(f))
        else:
            energies.append(subdiagonal_heat(f))
        subs.append(first_subdiagonal_sum(f))
    return HeatRunReport(n, t, x, variant, tuple(energies), tuple(subs), f)


def _run_float_kernel(n, t, x, variant) -> HeatRunReport:
    E, e, arr = _kernels.heat_triangle_float(n, t, float(x))
    m = n + 1
    cells = {}
    for i in range(1, m + 1):
        for j in range(1, i + 1):
            cells[(i, j)] = 0.5 if i == j else float(arr[i - 1, j - 1])
    if variant is Variant.GRID:
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                cells[(i, j)] = 1.0 - cells[(j, i)]
    diag = frozenset((i, i) for i in range(1, m + 1))
    f = OrderField(n, variant, "float", cells, pinned=diag)
    return HeatRunReport(n, t, float(x), variant, tuple(float(v) for v in E), tuple(float(v) for v in e), f)


def exact_E(n: int, t: int, x=None):
    """E_nt at conductivity ``x`` (default 1/n) on the triangle, exact unless ``x`` is a float."""
    return run(n, t, x, Variant.TRIANGLE).E


def format_scalar(v) -> str:
    if isinstance(v, PolyX):
        return v.to_dump()
    if isinstance(v, float):
        return repr(v)
    return format_rational(v)


def dump_matrix_rows(f: OrderField) -> list[tuple[int, int, str]]:
    """Rows (i, j, value) of the base (n+1)x(n+1) matrix, row-major."""
    m = f.n + 1
    mat = f.matrix()
    return [(i, j, format_scalar(mat[i - 1][j - 1])) for i in range(1, m + 1) for j in range(1, m + 1)]
