"""Polynomial sequences of Riordan type.

The rows of ``T(f|g)`` read as polynomials ``p_n(x) = sum_j d[n][j] x**j``
satisfy

    p_n = ((x - g_1)/g_0) p_{n-1} - (g_2/g_0) p_{n-2} - ... - (g_n/g_0) p_0 + f_n/g_0

and conversely any sequence obeying such a recurrence is the row sequence of
``T(f|g)``.  Matrix products of arrays become umbral composition of the
sequences.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import riordan as RA
from .errors import InsufficientTruncation, LengthMismatch, ZeroParameter
from .riordan import RiordanSpec, Triangle
from .series import Series, Scalar, format_rational, to_rational


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Coefficients in increasing powers; trailing zeros do not affect equality."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_rational(c) for c in self.coeffs) or (Fraction(0),))

    @classmethod
    def of(cls, *coeffs: Scalar) -> Polynomial:
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Polynomial:
        return cls((0,) * k + (c,))

    def trimmed(self) -> tuple[Fraction, ...]:
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        t = self.trimmed()
        return -1 if t == (0,) else len(t) - 1

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash(self.trimmed())

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, c: Scalar) -> Polynomial:
        c = to_rational(c)
        return Polynomial(tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def times_x(self, k: int = 1) -> Polynomial:
        return Polynomial((Fraction(0),) * k + self.coeffs)

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(k * self.coeffs[k] for k in range(1, len(self.coeffs))))

    def antiderivative(self) -> Polynomial:
        """Formal integral from 0."""
        return Polynomial((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coeffs)))

    def __call__(self, x0: Scalar) -> Fraction:
        return evaluate(self, x0)

    def substitute(self, q: Polynomial) -> Polynomial:
        """``p(q(x))`` by Horner's rule."""
        acc = Polynomial((self.coeffs[-1],))
        for c in reversed(self.coeffs[:-1]):
            acc = acc * q + Polynomial((c,))
        return acc

    def hadamard(self, h: Sequence[Fraction]) -> Polynomial:
        """Coefficient-wise product with the series coefficients ``h``."""
        t = self.trimmed()
        if len(t) > len(h):
            raise InsufficientTruncation(f"weight is known to order {len(h) - 1}, need {len(t) - 1}")
        return Polynomial(tuple(c * h[k] for k, c in enumerate(t)))

    def as_series(self, N: int) -> Series:
        t = self.trimmed()
        if len(t) > N + 1:
            raise InsufficientTruncation(f"polynomial of degree {len(t) - 1} exceeds order {N}")
        return Series.of(t, N)

    def __str__(self) -> str:
        return format_polynomial(self)


def _term(c: Fraction, k: int) -> str:
    mag = abs(c)
    if k == 0:
        return format_rational(mag)
    power = "x" if k == 1 else f"x^{k}"
    return power if mag == 1 else f"{format_rational(mag)}{power}"


def format_polynomial(p: Polynomial) -> str:
    """Ascending text form, e.g. ``1/2 - 2x^2 + 2/3x^4``."""
    terms = [(k, c) for k, c in enumerate(p.trimmed()) if c != 0]
    if not terms:
        return "0"
    out = []
    for i, (k, c) in enumerate(terms):
        body = _term(c, k)
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(out)


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(x(?:\^(\d+))?)?")


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial`; also accepts ``t`` for the variable."""
    s = text.replace(" ", "").replace("t", "x")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        k = 0 if m.group(3) is None else int(m.group(4) or 1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        pos = m.end()
    deg = max(coeffs)
    return Polynomial(tuple(coeffs.get(k, Fraction(0)) for k in range(deg + 1)))


def polynomial_json(p: Polynomial, n: int) -> dict:
    return {"n": n, "coeffs": [format_rational(c) for c in p.trimmed()]}


@dataclass(frozen=True)
class PolySeq:
    polys: tuple[Polynomial, ...]
    spec: RiordanSpec | None = None

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def as_triangle(self) -> Triangle:
        """Coefficient matrix; raises if some ``p_n`` has degree above ``n``."""
        rows = []
        for n, p in enumerate(self.polys):
            if p.degree > n:
                raise ValueError(f"p_{n} has degree {p.degree} > {n}")
            rows.append(tuple(p.coeff(k) for k in range(n + 1)))
        return Triangle(tuple(rows))

    @classmethod
    def from_triangle(cls, t: Triangle, spec: RiordanSpec | None = None) -> PolySeq:
        return cls(tuple(Polynomial(row) for row in t.rows), spec)

    def to_json(self) -> str:
        return json.dumps({"polys": [polynomial_json(p, n) for n, p in enumerate(self.polys)]})

    def to_text(self) -> str:
        return "".join(f"p_{n}(x) = {format_polynomial(p)}\n" for n, p in enumerate(self.polys))


def sequence_from_spec(spec: RiordanSpec, R: int) -> PolySeq:
    return PolySeq.from_triangle(RA.build_triangle(spec, R), spec)


def g_window(g: Series) -> int:
    """Index of the last nonzero coefficient of ``g`` within its truncation."""
    return max(i for i, c in enumerate(g) if c != 0)


def next_polynomial(prev: Sequence[Polynomial] | PolySeq, f: Series, g: Series,
                    window: int | None = None) -> Polynomial:
    """``p_n`` from ``p_0 .. p_{n-1}`` with ``n = len(prev)``.

    Only ``g_2 .. g_m`` enter the sum, where ``m`` is the last nonzero index of
    ``g`` (or ``window`` when given).
    """
    prev = list(prev)
    n = len(prev)
    if f.trunc_order < n or g.trunc_order < n:
        raise InsufficientTruncation(f"p_{n} needs f and g to order {n}")
    g0 = g[0]
    if n == 0:
        return Polynomial((f[0] / g0,))
    m = g_window(g) if window is None else window
    p = prev[n - 1].times_x() - prev[n - 1].scale(g[1])
    for i in range(2, min(n, m) + 1):
        p = p - prev[n - i].scale(g[i])
    p = p + Polynomial((f[n],))
    return p.scale(1 / g0)


def sequence_by_recurrence(f: Series, g: Series, R: int, window: int | None = None) -> PolySeq:
    polys: list[Polynomial] = []
    for _ in range(R):
        polys.append(next_polynomial(polys, f, g, window))
    return PolySeq(tuple(polys), RiordanSpec(f, g))


def umbral_compose(p: PolySeq, q: PolySeq) -> PolySeq:
    """``r_n(x) = sum_k p_{n,k} q_k(x)``, the sequence of the matrix product."""
    if len(p) != len(q):
        raise LengthMismatch(f"sequences have {len(p)} and {len(q)} terms")
    polys = []
    for pn in p.polys:
        r = Polynomial((0,))
        for k, c in enumerate(pn.trimmed()):
            if c:
                r = r + q.polys[k].scale(c)
        polys.append(r)
    spec = RA.product(p.spec, q.spec) if p.spec is not None and q.spec is not None else None
    return PolySeq(tuple(polys), spec)


def evaluate(p: Polynomial, x0: Scalar) -> Fraction:
    x0 = to_rational(x0)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x0 + c
    return acc


def bivariate_gf_check(spec: RiordanSpec, t0: Scalar, N: int) -> bool:
    """Whether ``sum_n p_n(t0) x**n`` equals ``f/(g - t0 x)`` to order ``N``."""
    t0 = to_rational(t0)
    seq = sequence_from_spec(spec, N + 1)
    lhs = [evaluate(p, t0) for p in seq.polys]
    closed = spec.f / (spec.g - Series.monomial(1, spec.g.trunc_order, t0))
    if closed.trunc_order < N:
        raise InsufficientTruncation(f"f/(g - t x) is only known to order {closed.trunc_order}")
    return list(closed.coeffs[: N + 1]) == lhs


def affine_transform_seq(p: PolySeq, gamma: Scalar, alpha: Scalar, beta: Scalar,
                         c: Scalar, a: Scalar, b: Scalar) -> PolySeq:
    """Sequence of ``T(gamma | alpha + beta x) T(f|g) T(c | a + b x)``.

        q_n(x) = (gamma c)/(alpha a) * sum_k C(n,k) (-beta/alpha)^(n-k) alpha^(-k) p_k((x-b)/a)
    """
    gamma, alpha, beta, c, a, b = map(to_rational, (gamma, alpha, beta, c, a, b))
    for name, v in (("gamma", gamma), ("alpha", alpha), ("c", c), ("a", a)):
        if v == 0:
            raise ZeroParameter(f"{name} must be nonzero")
    arg = Polynomial((-b / a, 1 / a))
    moved = [pk.substitute(arg) for pk in p.polys]
    lead = gamma * c / (alpha * a)
    polys = []
    for n in range(len(p)):
        q = Polynomial((0,))
        for k in range(n + 1):
            w = math.comb(n, k) * (-beta / alpha) ** (n - k) / alpha**k
            if w:
                q = q + moved[k].scale(w)
        polys.append(q.scale(lead))
    spec = None
    if p.spec is not None:
        N = p.spec.trunc_order
        left = RiordanSpec(Series.of([gamma], N), Series.of([alpha, beta], N))
        right = RiordanSpec(Series.of([c], N), Series.of([a, b], N))
        spec = RA.product(RA.product(left, p.spec), right)
    return PolySeq(tuple(polys), spec)


def toeplitz_premultiply(h: Polynomial, p: PolySeq) -> PolySeq:
    """Sequence of ``T(h|1) T(f|g)``: ``q_n = h_0 p_n + h_1 p_{n-1} + ... + h_m p_{n-m}``."""
    hc = h.trimmed()
    polys = []
    for n in range(len(p)):
        q = Polynomial((0,))
        for i in range(min(len(hc) - 1, n) + 1):
            if hc[i]:
                q = q + p.polys[n - i].scale(hc[i])
        polys.append(q)
    spec = None
    if p.spec is not None:
        N = p.spec.trunc_order
        spec = RA.product(RiordanSpec(Series.of(hc, N), Series.of([1], N)), p.spec)
    return PolySeq(tuple(polys), spec)


def polys_equal(a: Iterable[Polynomial], b: Iterable[Polynomial]) -> bool:
    a, b = list(a), list(b)
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))
