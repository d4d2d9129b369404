"""Truncated formal power series with exact rational coefficients.

A :class:`Series` holds ``c_0 .. c_N`` together with its truncation order
``N``.  Every coefficient it reports is exact: binary operations return the
smallest order both operands support, and nothing is ever padded past what
the inputs determine.

Scalars are :class:`fractions.Fraction`, which is already kept in lowest terms
with a positive denominator, so equality of series is plain tuple equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    InnerOrderZero,
    InsufficientTruncation,
    NotHadamardUnit,
    NotInvertible,
    OrderMismatch,
    UnknownName,
    ZeroConstantTerm,
    ZeroDivisor,
)

Rational = Fraction
Scalar = Union[int, Fraction, str]

NAMED_SERIES = ("one", "geometric", "exp", "neglog1m", "logratio", "poly:<coeffs>")


def to_rational(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Series:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(to_rational(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, values: Iterable[Scalar], N: int | None = None) -> Series:
        """Build from a finite coefficient list, i.e. a polynomial.

        Zeros are appended up to order ``N``; that is exact because the input
        is a polynomial.  Longer inputs are cut at ``N``.
        """
        values = [to_rational(v) for v in values] or [Fraction(0)]
        if N is None:
            return cls(tuple(values))
        values = values[: N + 1]
        values += [Fraction(0)] * (N + 1 - len(values))
        return cls(tuple(values))

    @classmethod
    def zero(cls, N: int) -> Series:
        return cls((Fraction(0),) * (N + 1))

    @classmethod
    def monomial(cls, k: int, N: int, c: Scalar = 1) -> Series:
        coeffs = [Fraction(0)] * (N + 1)
        if k <= N:
            coeffs[k] = to_rational(c)
        return cls(tuple(coeffs))

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    N = trunc_order

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def coeff(self, n: int) -> Fraction:
        if n > self.trunc_order:
            raise InsufficientTruncation(
                f"coefficient {n} requested from a series truncated at {self.trunc_order}"
            )
        return self.coeffs[n]

    def x_order(self) -> int | None:
        """Index of the first nonzero coefficient; ``None`` for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, N: int) -> Series:
        if N > self.trunc_order:
            raise InsufficientTruncation(
                f"cannot extend a series truncated at {self.trunc_order} to order {N}"
            )
        return Series(self.coeffs[: N + 1])

    def shift(self, k: int = 1) -> Series:
        """Multiply by ``x**k``; the truncation order grows by ``k``."""
        return Series((Fraction(0),) * k + self.coeffs)

    def unshift(self, k: int = 1) -> Series:
        """Divide by ``x**k``; the first ``k`` coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise OrderMismatch(f"series is not divisible by x^{k}")
        if k > self.trunc_order:
            raise InsufficientTruncation("nothing left after removing the x-power")
        return Series(self.coeffs[k:])

    def scale(self, c: Scalar) -> Series:
        c = to_rational(c)
        return Series(tuple(c * a for a in self.coeffs))

    def trimmed(self) -> tuple[Fraction, ...]:
        """Coefficients with trailing zeros removed (at least one entry kept)."""
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def __add__(self, other):
        if isinstance(other, Series):
            return add(self, other)
        return self + Series.of([other], self.trunc_order)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, Series):
            return add(self, -other)
        return self + (-to_rational(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return cauchy_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return divide(self, other)
        return self.scale(1 / to_rational(other))

    def __call__(self, inner: Series) -> Series:
        return compose(self, inner)

    def __str__(self) -> str:
        return format_series(self)


def format_series(s: Series, trim: bool = False) -> str:
    coeffs = s.trimmed() if trim else s.coeffs
    return ",".join(format_rational(c) for c in coeffs)


def add(a: Series, b: Series) -> Series:
    N = min(a.trunc_order, b.trunc_order)
    return Series(tuple(a[i] + b[i] for i in range(N + 1)))


def _mul_trunc(a: Sequence[Fraction], b: Sequence[Fraction], N: int) -> list[Fraction]:
    out = [Fraction(0)] * (N + 1)
    for i, ai in enumerate(a[: N + 1]):
        if not ai:
            continue
        for j in range(min(len(b), N + 1 - i)):
            out[i + j] += ai * b[j]
    return out


def cauchy_mul(a: Series, b: Series) -> Series:
    N = min(a.trunc_order, b.trunc_order)
    return Series(tuple(_mul_trunc(a.coeffs, b.coeffs, N)))


def reciprocal(a: Series) -> Series:
    a0 = a[0]
    if a0 == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    out = [1 / a0]
    for n in range(1, len(a)):
        acc = sum((a[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(-acc / a0)
    return Series(tuple(out))


def divide(a: Series, b: Series) -> Series:
    """Quotient ``a/b`` after cancelling the common power of ``x``.

    The result order is ``min(a.N, b.N) - v`` where ``v`` is the x-order of ``b``.
    """
    vb = b.x_order()
    if vb is None:
        raise ZeroDivisor("division by a series that vanishes up to its truncation")
    N = min(a.trunc_order, b.trunc_order) - vb
    if N < 0:
        raise InsufficientTruncation("no exact coefficient survives the division")
    va = a.x_order()
    if va is None:
        return Series.zero(N)
    if vb > va:
        raise OrderMismatch(f"divisor has x-order {vb} > dividend x-order {va}")
    num = Series(a.coeffs[vb : vb + N + 1])
    den = Series(b.coeffs[vb : vb + N + 1])
    return cauchy_mul(num, reciprocal(den))


def compose(outer: Series, inner: Series) -> Series:
    """``outer(inner(x))`` for ``inner`` without constant term.

    With ``v`` the x-order of ``inner``, the unknown tail of ``outer`` starts
    contributing at ``x**((outer.N + 1) * v)``, and the tail of ``inner`` at
    ``x**(inner.N + 1)``; the result is truncated just below both.
    """
    if inner[0] != 0:
        raise InnerOrderZero("the inner series of a composition must have order >= 1")
    v = inner.x_order()
    if v is None:
        v = inner.trunc_order + 1
    N = min(inner.trunc_order, (outer.trunc_order + 1) * v - 1)
    K = min(outer.trunc_order, N // v)
    acc = [Fraction(0)] * (N + 1)
    acc[0] = outer[K]
    for k in range(K - 1, -1, -1):
        acc = _mul_trunc(acc, inner.coeffs, N)
        acc[0] += outer[k]
    return Series(tuple(acc))


def comp_inverse(w: Series) -> Series:
    """Compositional inverse of an order-one series, same truncation order."""
    if w.trunc_order < 1 or w[0] != 0 or w[1] == 0:
        raise NotInvertible("compositional inverse needs w_0 = 0 and w_1 != 0")
    N = w.trunc_order
    w1 = w[1]
    v = [Fraction(0), 1 / w1] + [Fraction(0)] * (N - 1)
    # [x^n] w(v) = w_1 v_n + (terms in v_1..v_{n-1}); solve for v_n one at a time
    for n in range(2, N + 1):
        partial = compose(w.truncate(n), Series(tuple(v[: n + 1])))
        v[n] = -partial[n] / w1
    return Series(tuple(v))


def hadamard(a: Series, b: Series) -> Series:
    N = min(a.trunc_order, b.trunc_order)
    return Series(tuple(a[i] * b[i] for i in range(N + 1)))


def hadamard_reciprocal(h: Series) -> Series:
    out = []
    for n, c in enumerate(h):
        if c == 0:
            raise NotHadamardUnit(n)
        out.append(1 / c)
    return Series(tuple(out))


def derivative(a: Series) -> Series:
    if a.trunc_order < 1:
        raise InsufficientTruncation("the derivative of an order-0 truncation is unknown")
    return Series(tuple(n * a[n] for n in range(1, len(a))))


def named_series(name: str, N: int) -> Series:
    """First ``N + 1`` coefficients of a named expansion.

    ``one``, ``geometric`` (1/(1-x)), ``exp``, ``neglog1m`` (-log(1-x)),
    ``logratio`` (log((1+x)/(1-x))) or a literal ``poly:c0,c1,...``.
    """
    name = name.strip()
    if name.startswith("poly:"):
        return Series.of(parse_coefficients(name[len("poly:"):]), N)
    if name == "one":
        return Series.monomial(0, N)
    if name == "geometric":
        return Series((Fraction(1),) * (N + 1))
    if name == "exp":
        return Series(tuple(Fraction(1, math.factorial(n)) for n in range(N + 1)))
    if name == "neglog1m":
        return Series((Fraction(0),) + tuple(Fraction(1, n) for n in range(1, N + 1)))
    if name == "logratio":
        return Series(
            (Fraction(0),)
            + tuple(Fraction(2, n) if n % 2 else Fraction(0) for n in range(1, N + 1))
        )
    raise UnknownName(f"unknown series name {name!r}; expected one of {', '.join(NAMED_SERIES)}")


def parse_coefficients(text: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed coefficient list {text!r}")
    return [Fraction(p) for p in parts]


def parse_series(text: str, N: int | None = None) -> Series:
    """Parse the text form: a comma list of rationals or a named token."""
    text = text.strip()
    if text and (text[0].isalpha()):
        if N is None:
            raise ValueError(f"a truncation order is required for named series {text!r}")
        return named_series(text, N)
    return Series.of(parse_coefficients(text), N)
