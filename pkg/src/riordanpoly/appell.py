"""Generalized Appell families: Riordan row sequences weighted by a Hadamard unit.

For a weight ``h`` with every coefficient nonzero, ``s_n = p_n * h`` (Hadamard
product, i.e. ``s_{n,k} = d[n][k] h_k``) satisfies

    s_n = (1/g_0) (x s_{n-1} * hhat) - (g_1/g_0) s_{n-1} - ... - (g_n/g_0) s_0 + h_0 f_n / g_0

with ``hhat = sum_{k>=1} (h_k / h_{k-1}) x**k``.  ``h = exp`` gives Sheffer
sequences, ``g = 1`` Brenke sequences and ``f = g`` convolution families.

All sequences are stored un-normalized; ``AppellSeq.as_polys(factorial=True)``
gives the customary ``n! s_n`` form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import riordan as RA
from . import series as S
from .errors import (
    IdentityViolation,
    InsufficientTruncation,
    NonzeroConstantTerm,
    NotHadamardUnit,
    NotProper,
    UnknownCase,
    UnknownName,
    ZeroConstantTerm,
)
from .polyseq import Polynomial, PolySeq, sequence_from_spec
from .riordan import RiordanSpec
from .series import Series, Scalar, to_rational

WEIGHT_TOKENS = ("exp", "geometric", "inv_square", "a_minus_log:<a>", "custom:<coeffs>")


@dataclass(frozen=True)
class Weight:
    """A Hadamard unit ``h``; validity is checked only up to the order used."""

    h: Series
    name: str = "custom"

    def coeff(self, k: int) -> Fraction:
        if k > self.h.trunc_order:
            raise InsufficientTruncation(f"weight {self.name} is known to order {self.h.trunc_order}, need {k}")
        c = self.h[k]
        if c == 0:
            raise NotHadamardUnit(k, f"weight {self.name} has h_{k} = 0")
        return c

    def check(self, N: int) -> tuple[Fraction, ...]:
        return tuple(self.coeff(k) for k in range(N + 1))

    def hat(self, N: int) -> Series:
        """``hhat_k = h_k / h_{k-1}`` for ``k >= 1``, ``hhat_0 = 0``."""
        h = self.check(N)
        return Series((Fraction(0),) + tuple(h[k] / h[k - 1] for k in range(1, N + 1)))

    def reciprocal(self, N: int) -> Series:
        return S.hadamard_reciprocal(self.h.truncate(N))

    def derivative(self) -> Weight:
        return Weight(S.derivative(self.h), f"D({self.name})")

    @classmethod
    def exp(cls, N: int) -> Weight:
        return cls(S.named_series("exp", N), "exp")

    @classmethod
    def geometric(cls, N: int) -> Weight:
        return cls(S.named_series("geometric", N), "geometric")

    @classmethod
    def inv_square(cls, N: int) -> Weight:
        """``1/(1-x)**2 = sum (k+1) x**k``."""
        return cls(Series(tuple(Fraction(k + 1) for k in range(N + 1))), "inv_square")

    @classmethod
    def a_minus_log(cls, a: Scalar, N: int) -> Weight:
        """``a - log(1-x)``."""
        a = to_rational(a)
        return cls(Series.of([a], N) + S.named_series("neglog1m", N), f"a_minus_log:{a}")

    @classmethod
    def from_token(cls, token: str, N: int) -> Weight:
        token = token.strip()
        if token == "exp":
            return cls.exp(N)
        if token == "geometric":
            return cls.geometric(N)
        if token == "inv_square":
            return cls.inv_square(N)
        if token.startswith("a_minus_log:"):
            return cls.a_minus_log(token.split(":", 1)[1], N)
        if token.startswith("custom:"):
            return cls(Series.of(S.parse_coefficients(token.split(":", 1)[1]), N), token)
        raise UnknownName(f"unknown weight {token!r}; expected one of {', '.join(WEIGHT_TOKENS)}")


@dataclass(frozen=True)
class AppellSeq:
    polys: tuple[Polynomial, ...]
    spec: RiordanSpec
    weight: Weight

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, n: int) -> Polynomial:
        return self.polys[n]

    def __iter__(self):
        return iter(self.polys)

    def as_polys(self, factorial: bool = False) -> tuple[Polynomial, ...]:
        if not factorial:
            return self.polys
        return tuple(p.scale(math.factorial(n)) for n, p in enumerate(self.polys))

    def unweighted(self) -> PolySeq:
        """Undo the weighting with the Hadamard reciprocal of ``h``."""
        N = len(self.polys) - 1
        inv = self.weight.reciprocal(N)
        return PolySeq(tuple(p.hadamard(inv) for p in self.polys), self.spec)

    def to_text(self, factorial: bool = False) -> str:
        return PolySeq(self.as_polys(factorial)).to_text()

    def to_json(self, factorial: bool = False) -> str:
        return PolySeq(self.as_polys(factorial)).to_json()


def weighted_sequence(spec: RiordanSpec, w: Weight, R: int) -> AppellSeq:
    h = w.check(R - 1)
    p = sequence_from_spec(spec, R)
    return AppellSeq(tuple(pn.hadamard(h) for pn in p.polys), spec, w)


def appell_recurrence_step(prev: Sequence[Polynomial] | AppellSeq, f: Series, g: Series,
                           w: Weight) -> Polynomial:
    """``s_n`` from ``s_0 .. s_{n-1}`` (``n = len(prev)``), coefficient by coefficient.

        s_{n,k} = -(g_1 s_{n-1,k} + ... + g_n s_{0,k}) / g_0 + (h_k / h_{k-1}) s_{n-1,k-1} / g_0
        s_{n,0} = -(g_1 s_{n-1,0} + ... + g_n s_{0,0}) / g_0 + h_0 f_n / g_0
    """
    prev = list(prev)
    n = len(prev)
    if f.trunc_order < n or g.trunc_order < n:
        raise InsufficientTruncation(f"s_{n} needs f and g to order {n}")
    g0 = g[0]
    h0 = w.coeff(0)
    if n == 0:
        return Polynomial((h0 * f[0] / g0,))
    hat = w.hat(n)
    coeffs = []
    for k in range(n + 1):
        # s_{n-i,k} = 0 once n - i < k
        acc = -sum((g[i] * prev[n - i].coeff(k) for i in range(1, n - k + 1)), Fraction(0))
        acc += h0 * f[n] if k == 0 else hat[k] * prev[n - 1].coeff(k - 1)
        coeffs.append(acc / g0)
    return Polynomial(tuple(coeffs))


def appell_by_recurrence(spec: RiordanSpec, w: Weight, R: int) -> AppellSeq:
    polys: list[Polynomial] = []
    for _ in range(R):
        polys.append(appell_recurrence_step(polys, spec.f, spec.g, w))
    return AppellSeq(tuple(polys), spec, w)


def sheffer_sequence(spec: RiordanSpec, R: int) -> AppellSeq:
    """``S_n(x) = sum_k p_{n,k} x**k / k!``."""
    if not spec.proper:
        raise NotProper("a Sheffer sequence needs f_0 != 0")
    return weighted_sequence(spec, Weight.exp(max(R - 1, 0)), R)


def brenke_sequence(f: Series, w: Weight, R: int) -> AppellSeq:
    if f[0] == 0:
        raise ZeroConstantTerm("a Brenke sequence needs f_0 != 0")
    return weighted_sequence(RiordanSpec(f, Series.monomial(0, f.trunc_order)), w, R)


def convolution_sequence(g: Series, R: int) -> AppellSeq:
    """Sheffer sequence of ``T(g|g)``, generated by ``exp(t x / g)``."""
    return sheffer_sequence(RiordanSpec(g, g), R)


def delta_series(g: Series, N: int) -> Series:
    """``x/A`` for the A-sequence ``A`` of ``T(g|g)``, to order ``N``."""
    A = RA.a_sequence(g, N - 1)
    return S.reciprocal(A).shift(1)


def apply_delta_operator(c: Series, p: Polynomial) -> Polynomial:
    """``sum_{k>=1} c_k D^k p`` for an order-one ``c``."""
    if c[0] != 0:
        raise NonzeroConstantTerm("a delta operator series must have c_0 = 0")
    deg = p.degree
    if deg > c.trunc_order:
        raise InsufficientTruncation(f"operator known to order {c.trunc_order}, polynomial has degree {deg}")
    out = Polynomial((0,))
    d = p
    for k in range(1, deg + 1):
        d = d.derivative()
        if c[k]:
            out = out + d.scale(c[k])
    return out


def derivative_identity_check(spec: RiordanSpec, w: Weight, R: int) -> bool:
    """Check ``p^{D h}_{n-1} = sum_{k=0}^{n} g_k D(p^h_{n-k})`` for ``1 <= n < R``."""
    p = sequence_from_spec(spec, R)
    h = w.check(R - 1)
    Dh = [(k + 1) * h[k + 1] for k in range(R - 1)]
    for k, c in enumerate(Dh):
        if c == 0:
            raise NotHadamardUnit(k, f"D({w.name}) has coefficient {k} = 0")
    weighted = [pn.hadamard(h) for pn in p.polys]
    for n in range(1, R):
        lhs = p.polys[n - 1].hadamard(Dh)
        rhs = Polynomial((0,))
        for k in range(n + 1):
            rhs = rhs + weighted[n - k].derivative().scale(spec.g[k])
        if lhs != rhs:
            return False
    return True


def weighted_special_cases(p: PolySeq, case: str, a: Scalar | None = None) -> PolySeq:
    """Weights built from the geometric series, computed two ways.

    ``inv_square``: ``p_n * 1/(1-x)**2 = (x p_n)'``.
    ``a_minus_log``: ``p_n * (a - log(1-x)) = a p_n(0) + int_0^x (p_n(t) - p_n(0))/t dt``.
    The token ``a_minus_log:<a>`` may carry ``a`` inline.
    """
    if case.startswith("a_minus_log:"):
        case, a = "a_minus_log", case.split(":", 1)[1]
    N = max((q.degree for q in p.polys), default=0)
    N = max(N, 0)
    if case == "inv_square":
        w = Weight.inv_square(N)
        closed = [q.times_x().derivative() for q in p.polys]
    elif case == "a_minus_log":
        if a is None:
            raise UnknownCase("a_minus_log needs a value for a")
        a = to_rational(a)
        w = Weight.a_minus_log(a, N)
        closed = []
        for q in p.polys:
            q0 = q.coeff(0)
            rest = Polynomial(q.trimmed()[1:] or (0,))  # (q(t) - q(0)) / t
            closed.append(Polynomial((a * q0,)) + rest.antiderivative())
    else:
        raise UnknownCase(f"unknown case {case!r}; expected inv_square or a_minus_log:<a>")
    h = w.check(N)
    direct = [q.hadamard(h) for q in p.polys]
    for n, (x, y) in enumerate(zip(direct, closed)):
        if x != y:
            raise IdentityViolation(f"{case}: Hadamard weighting and closed form differ at n={n}")
    return PolySeq(tuple(direct), p.spec)
