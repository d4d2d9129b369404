"""Riordan arrays ``T(f|g)``.

``T(f|g)`` is the lower-triangular matrix whose k-th column has generating
function ``(f/g) * (x/g)**k``.  Triangles are built row by row with the
construction recurrence

    d[n][j] = -(g_1 d[n-1][j] + ... + g_n d[0][j]) / g_0 + d[n-1][j-1] / g_0
    d[n][0] = -(g_1 d[n-1][0] + ... + g_n d[0][0]) / g_0 + f_n / g_0

and the column generating functions are kept as an independent route
(:func:`column_gf`) for cross-checking.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import series as S
from .errors import (
    InsufficientTruncation,
    NotProper,
    NotRiordan,
    ZeroConstantTerm,
    ZeroDiagonal,
)
from .series import Series, format_rational

Row = tuple[Fraction, ...]


@dataclass(frozen=True)
class RiordanSpec:
    """The pair ``(f, g)`` with ``g_0 != 0``."""

    f: Series
    g: Series

    def __post_init__(self):
        if self.g[0] == 0:
            raise ZeroConstantTerm("g_0 must be nonzero in T(f|g)")

    @classmethod
    def of(cls, f: Iterable, g: Iterable, N: int | None = None) -> RiordanSpec:
        return cls(Series.of(f, N), Series.of(g, N))

    @property
    def proper(self) -> bool:
        return self.f[0] != 0

    @property
    def trunc_order(self) -> int:
        return min(self.f.trunc_order, self.g.trunc_order)

    def truncate(self, N: int) -> RiordanSpec:
        return RiordanSpec(self.f.truncate(N), self.g.truncate(N))

    def first_term(self) -> Series:
        """``f/g``."""
        return S.cauchy_mul(self.f, S.reciprocal(self.g))

    def rate(self) -> Series:
        """``x/g``; one order longer than ``g``."""
        return S.reciprocal(self.g).shift(1)

    def __mul__(self, other: RiordanSpec) -> RiordanSpec:
        return product(self, other)

    def __str__(self) -> str:
        return f"T({S.format_series(self.f, trim=True)} | {S.format_series(self.g, trim=True)})"


@dataclass(frozen=True)
class Triangle:
    rows: tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(tuple(S.to_rational(c) for c in row) for row in self.rows)
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise ValueError(f"row {n} has {len(row)} entries, expected {n + 1}")
        object.__setattr__(self, "rows", rows)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, n: int) -> Row:
        return self.rows[n]

    def entry(self, n: int, j: int) -> Fraction:
        """``d[n][j]``, reading zero above the diagonal."""
        return self.rows[n][j] if j <= n else Fraction(0)

    def column(self, k: int) -> list[Fraction]:
        return [self.entry(n, k) for n in range(self.row_count)]

    def head(self, R: int) -> Triangle:
        if R > self.row_count:
            raise InsufficientTruncation(f"triangle has only {self.row_count} rows")
        return Triangle(self.rows[:R])

    def drop_first(self) -> Triangle:
        """Delete the first row and the first column."""
        return Triangle(tuple(row[1:] for row in self.rows[1:]))

    def __matmul__(self, other: Triangle) -> Triangle:
        R = min(self.row_count, other.row_count)
        return Triangle(
            tuple(
                tuple(
                    sum((self.rows[n][k] * other.rows[k][j] for k in range(j, n + 1)), Fraction(0))
                    for j in range(n + 1)
                )
                for n in range(R)
            )
        )

    def inverse(self) -> Triangle:
        """Exact inverse by forward substitution."""
        R = self.row_count
        for n in range(R):
            if self.rows[n][n] == 0:
                raise ZeroDiagonal(n)
        inv: list[list[Fraction]] = []
        for n in range(R):
            row = []
            for j in range(n + 1):
                acc = Fraction(int(n == j))
                acc -= sum((self.rows[n][k] * inv[k][j] for k in range(j, n)), Fraction(0))
                row.append(acc / self.rows[n][n])
            inv.append(row)
        return Triangle(tuple(tuple(r) for r in inv))

    @classmethod
    def identity(cls, R: int) -> Triangle:
        return cls(tuple(tuple(Fraction(int(j == n)) for j in range(n + 1)) for n in range(R)))

    def to_json(self) -> str:
        return json.dumps({"rows": [[format_rational(c) for c in row] for row in self.rows]})

    def to_csv(self) -> str:
        R = self.row_count
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        for row in self.rows:
            writer.writerow([format_rational(c) for c in row] + [""] * (R - len(row)))
        return out.getvalue()

    def to_text(self, aux: Sequence[Fraction] | None = None) -> str:
        """Aligned columns.

        ``aux`` prints the extra f-column to the left of a bar, the way the
        construction display shows it; it has ``R + 1`` entries.
        """
        cells = [[format_rational(c) for c in row] for row in self.rows]
        if aux is None:
            widths = [max(len(cells[n][j]) for n in range(j, len(cells))) for j in range(len(cells))]
            lines = ["  ".join(c.rjust(widths[j]) for j, c in enumerate(row)) for row in cells]
            return "\n".join(lines) + ("\n" if lines else "")
        left = [format_rational(S.to_rational(c)) for c in aux]
        lw = max(len(c) for c in left)
        widths = [max(len(cells[n][j]) for n in range(j, len(cells))) for j in range(len(cells))]
        lines = [left[0].rjust(lw) + " |"]
        for n, row in enumerate(cells):
            body = "  ".join(c.rjust(widths[j]) for j, c in enumerate(row))
            lines.append(left[n + 1].rjust(lw) + " | " + body)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Triangle:
        data = json.loads(text)
        return cls(tuple(tuple(Fraction(c) for c in row) for row in data["rows"]))

    @classmethod
    def from_csv(cls, text: str) -> Triangle:
        rows = []
        for record in csv.reader(io.StringIO(text)):
            cells = [c.strip() for c in record if c.strip() != ""]
            if cells:
                rows.append(tuple(Fraction(c) for c in cells))
        return cls(tuple(rows))

    @classmethod
    def parse(cls, text: str) -> Triangle:
        return cls.from_json(text) if text.lstrip().startswith("{") else cls.from_csv(text)


def _require(s: Series, N: int, what: str) -> None:
    if s.trunc_order < N:
        raise InsufficientTruncation(f"{what} is truncated at {s.trunc_order}, need order {N}")


def build_triangle(spec: RiordanSpec, R: int) -> Triangle:
    """First ``R`` rows of ``T(f|g)`` by the construction recurrence."""
    f, g = spec.f, spec.g
    _require(f, R - 1, "f")
    _require(g, R - 1, "g")
    g0 = g[0]
    rows: list[Row] = []
    for n in range(R):
        row = []
        for j in range(n + 1):
            # d[n-i][j] vanishes once n - i < j
            acc = -sum((g[i] * rows[n - i][j] for i in range(1, n - j + 1)), Fraction(0))
            acc += f[n] if j == 0 else rows[n - 1][j - 1]
            row.append(acc / g0)
        rows.append(tuple(row))
    return Triangle(tuple(rows))


def column_gf(spec: RiordanSpec, k: int, N: int) -> Series:
    """``(f/g) * (x/g)**k`` to order ``N``."""
    col = spec.first_term()
    rate = spec.rate()
    for _ in range(k):
        col = S.cauchy_mul(col, rate)
    if col.trunc_order < N:
        raise InsufficientTruncation(f"column {k} is only known to order {col.trunc_order}")
    return col.truncate(N)


def act(spec: RiordanSpec, h: Series) -> Series:
    """The induced action ``T(f|g)(h) = (f/g) * h(x/g)``."""
    return S.cauchy_mul(spec.first_term(), S.compose(h, spec.rate()))


def product(a: RiordanSpec, b: RiordanSpec) -> RiordanSpec:
    """``T(f|g) T(l|m) = T(f l(x/g) | g m(x/g))``."""
    rate = a.rate()
    return RiordanSpec(
        S.cauchy_mul(a.f, S.compose(b.f, rate)),
        S.cauchy_mul(a.g, S.compose(b.g, rate)),
    )


def identity(N: int) -> RiordanSpec:
    return RiordanSpec(Series.monomial(0, N), Series.monomial(0, N))


def recover_spec(t: Triangle) -> RiordanSpec:
    """Find ``(f, g)`` with ``T(f|g) = t`` from the first two columns.

    The first ``R`` rows of ``T(f|g)`` do not see ``g_{R-1}``; it is pinned
    to zero and ``f_{R-1}`` is chosen to match.  Every other entry of ``t`` is
    then checked against a rebuild and the first disagreement is reported.
    """
    R = t.row_count
    if R < 2:
        raise InsufficientTruncation("recovering a Riordan array needs at least two rows")
    for n in range(R):
        if t.rows[n][n] == 0:
            raise ZeroDiagonal(n)
    d = t.entry
    g = [d(0, 0) / d(1, 1)]
    for n in range(2, R):
        acc = d(n - 1, 0) - g[0] * d(n, 1)
        acc -= sum((g[i] * d(n - i, 1) for i in range(1, n - 1)), Fraction(0))
        g.append(acc / d(1, 1))
    g.append(Fraction(0))
    f = [sum((g[i] * d(n - i, 0) for i in range(n + 1)), Fraction(0)) for n in range(R)]
    spec = RiordanSpec(Series(tuple(f)), Series(tuple(g)))
    rebuilt = build_triangle(spec, R)
    for n in range(R):
        for j in range(n + 1):
            if rebuilt.rows[n][j] != t.rows[n][j]:
                raise NotRiordan(n, j, rebuilt.rows[n][j], t.rows[n][j])
    return spec


def inverse(a: RiordanSpec, R: int) -> RiordanSpec:
    """Group inverse, valid for the first ``R`` rows."""
    if not a.proper:
        raise NotProper("only proper arrays (f_0 != 0) are invertible")
    return recover_spec(build_triangle(a, R).inverse())


def from_dh_notation(d: Series, h: Series) -> RiordanSpec:
    """Convert the ``(d(t), h(t))`` notation: ``(d, h) = T(d/h | 1/h)``."""
    if h[0] == 0 or d[0] == 0:
        raise ZeroConstantTerm("(d, h) notation needs d(0) != 0 and h(0) != 0")
    return RiordanSpec(S.divide(d, h), S.reciprocal(h))


def to_dh_notation(spec: RiordanSpec) -> tuple[Series, Series]:
    return spec.first_term(), S.reciprocal(spec.g)


def shift_down(spec: RiordanSpec) -> RiordanSpec:
    """``T(f/g | g)``: the array with its first row and column deleted."""
    return RiordanSpec(spec.first_term(), spec.g)


def shift_up(spec: RiordanSpec) -> RiordanSpec:
    """``T(fg | g)``: the f-column prepended, shifted one row up."""
    return RiordanSpec(S.cauchy_mul(spec.f, spec.g), spec.g)


def a_sequence(g: Series, N: int) -> Series:
    """The series ``A`` with ``A(x/g) = 1/g``, to order ``N``."""
    if g[0] == 0:
        raise ZeroConstantTerm("the A-sequence needs g_0 != 0")
    inv_g = S.reciprocal(g)
    A = S.compose(inv_g, S.comp_inverse(inv_g.shift(1)))
    if A.trunc_order < N:
        raise InsufficientTruncation(f"g determines the A-sequence only to order {A.trunc_order}")
    return A.truncate(N)
