"""Named classical families with golden data, plus cross-family identity checks.

Golden rows and polynomials live in ``data/families.json`` exactly as they are
printed in the source tables.  Series that are not polynomials (Hermite,
Pidduck, Mittag-Leffler) are referenced there by expression name and
generated here at whatever truncation is requested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from . import appell as AP
from . import polyseq as PS
from . import riordan as RA
from . import series as S
from .errors import UnknownFamily
from .polyseq import Polynomial, parse_polynomial
from .riordan import RiordanSpec, Triangle
from .series import Series


def _logratio_quotient(N: int, times_geometric: bool) -> Series:
    L = S.named_series("logratio", N + 1)
    den = S.cauchy_mul(Series.of([1, -1], N + 1), L) if times_geometric else L
    return S.divide(Series.monomial(1, N + 1), den)


def _exp_neg_x2(N: int) -> Series:
    return S.compose(S.named_series("exp", N), Series.monomial(2, N, -1))


EXPRESSIONS: dict[str, Callable[[int], Series]] = {
    "exp_neg_x2": _exp_neg_x2,
    "hermite_f": lambda N: _exp_neg_x2(N).scale(Fraction(1, 2)),
    "ml": lambda N: _logratio_quotient(N, False),
    "pidduck_f": lambda N: _logratio_quotient(N, True),
}


def _series(value, N: int) -> Series:
    if isinstance(value, str):
        return EXPRESSIONS[value](N)
    return Series.of(value, N)


def _spec(raw: dict, N: int) -> RiordanSpec:
    return RiordanSpec(_series(raw["f"], N), _series(raw["g"], N))


@dataclass(frozen=True)
class FamilyEntry:
    name: str
    spec: RiordanSpec
    weight: AP.Weight | None
    golden_rows: Triangle | None
    golden_polys: tuple[Polynomial, ...]
    aux: tuple[Fraction, ...] = ()
    rows_spec: RiordanSpec | None = None
    golden_polys_factorial: tuple[Polynomial, ...] = ()
    gf: dict | None = None
    provenance: dict = field(default_factory=dict)

    def display(self) -> Triangle | None:
        """The printed table including its f-column, i.e. the rows of ``T(fg|g)``."""
        if not self.aux or self.golden_rows is None:
            return None
        rows = [(self.aux[0],)]
        rows += [(self.aux[n + 1],) + row for n, row in enumerate(self.golden_rows.rows)]
        return Triangle(tuple(rows))

    def sequence(self, R: int) -> tuple[Polynomial, ...]:
        """``p_n`` (unweighted families) or ``s_n`` (weighted), ``n < R``."""
        if self.weight is None:
            return PS.sequence_from_spec(self.spec, R).polys
        return AP.weighted_sequence(self.spec, self.weight, R).polys

    def closed_gf(self, t0, N: int) -> Series:
        """The printed bivariate generating function at ``t = t0``, to order ``N``."""
        t0 = S.to_rational(t0)

        def at(rows):
            return Series.of([PS.evaluate(Polynomial(tuple(map(Fraction, c))), t0) for c in rows], N)

        return S.divide(at(self.gf["num"]), at(self.gf["den"]))


@lru_cache(maxsize=1)
def _raw() -> dict:
    text = resources.files("riordanpoly").joinpath("data/families.json").read_text()
    data = json.loads(text)
    return {fam["family"]: fam for fam in data["families"]}


def family_names() -> list[str]:
    return list(_raw())


def get_family(name: str, R: int) -> FamilyEntry:
    """Entry with its spec (and weight) truncated to order ``R - 1``."""
    try:
        raw = _raw()[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(_raw())}") from None
    N = max(R - 1, 0)
    return FamilyEntry(
        name=name,
        spec=_spec(raw["spec"], N),
        weight=AP.Weight.from_token(raw["weight"], N) if raw.get("weight") else None,
        golden_rows=Triangle(tuple(tuple(map(Fraction, r)) for r in raw["rows"])) if raw.get("rows") else None,
        golden_polys=tuple(parse_polynomial(p) for p in raw.get("polys", ())),
        aux=tuple(Fraction(c) for c in raw.get("aux", ())),
        rows_spec=_spec(raw["rows_spec"], N) if raw.get("rows_spec") else None,
        golden_polys_factorial=tuple(parse_polynomial(p) for p in raw.get("polys_factorial", ())),
        gf=raw.get("gf"),
        provenance=dict(raw.get("provenance", {})),
    )


@dataclass
class VerifyReport:
    name: str
    checked: list[str] = field(default_factory=list)
    mismatch: str | None = None
    location: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def __str__(self) -> str:
        status = "ok" if self.ok else f"MISMATCH {self.mismatch}"
        return f"{self.name}: {status} [{', '.join(self.checked)}]"


def _diff_rows(got: Triangle, want: Triangle) -> tuple[int, int, Fraction, Fraction] | None:
    for n, (g_row, w_row) in enumerate(zip(got.rows, want.rows)):
        for k, (a, b) in enumerate(zip(g_row, w_row)):
            if a != b:
                return n, k, b, a
    return None


def _diff_polys(got, want) -> tuple[int, int, Fraction, Fraction] | None:
    for n, (p, q) in enumerate(zip(got, want)):
        if p != q:
            for k in range(max(len(p.coeffs), len(q.coeffs))):
                if p.coeff(k) != q.coeff(k):
                    return n, k, q.coeff(k), p.coeff(k)
    return None


GF_POINTS = (Fraction(0), Fraction(1), Fraction(-1, 2))


def verify_entry(entry: FamilyEntry, R: int) -> VerifyReport:
    """Rebuild everything the entry carries from its spec and diff against golden data."""
    report = VerifyReport(entry.name)

    def fail(what, diff):
        n, k, want, got = diff
        report.mismatch = f"{what} at (n={n}, k={k}): expected {S.format_rational(want)}, got {S.format_rational(got)}"
        report.location = (n, k)
        return report

    if entry.golden_rows is not None:
        rows = min(R, entry.golden_rows.row_count)
        got = RA.build_triangle(entry.rows_spec or entry.spec, rows)
        if diff := _diff_rows(got, entry.golden_rows.head(rows)):
            return fail("rows", diff)
        report.checked.append(f"rows:{rows}")
    display = entry.display()
    if display is not None:
        rows = min(R, display.row_count)
        got = RA.build_triangle(RA.shift_up(entry.spec), rows)
        if diff := _diff_rows(got, display.head(rows)):
            return fail("display", diff)
        report.checked.append(f"display:{rows}")
    if entry.golden_polys:
        count = min(R, len(entry.golden_polys))
        if diff := _diff_polys(entry.sequence(count), entry.golden_polys[:count]):
            return fail("polys", diff)
        report.checked.append(f"polys:{count}")
    if entry.golden_polys_factorial and entry.weight is not None:
        count = min(R, len(entry.golden_polys_factorial))
        got = AP.weighted_sequence(entry.spec, entry.weight, count).as_polys(factorial=True)
        if diff := _diff_polys(got, entry.golden_polys_factorial[:count]):
            return fail("polys_factorial", diff)
        report.checked.append(f"polys_factorial:{count}")
    if entry.gf is not None and R >= 1:
        N = R - 1
        for t0 in GF_POINTS:
            if not PS.bivariate_gf_check(entry.spec, t0, N):
                report.mismatch = f"bivariate generating function f/(g - t x) at t={t0}"
                return report
            values = [PS.evaluate(p, t0) for p in PS.sequence_from_spec(entry.spec, N + 1).polys]
            if list(entry.closed_gf(t0, N).coeffs) != values:
                report.mismatch = f"printed generating function at t={t0}"
                return report
        report.checked.append(f"gf:{N}")
    return report


def verify_family(name: str, R: int) -> VerifyReport:
    return verify_entry(get_family(name, R), R)


def golden_size(name: str) -> int:
    """Rows needed to cover every piece of golden data of a family."""
    raw = _raw()[name]
    return max(len(raw.get("rows", ())), len(raw.get("aux", ())), len(raw.get("polys", ())), 1)


# --- cross-family identities -------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _seq(name: str, R: int) -> tuple[Polynomial, ...]:
    return get_family(name, R).sequence(R)


def _first_failure(pairs) -> str:
    for label, lhs, rhs in pairs:
        if lhs != rhs:
            return f"{label}: {lhs} != {rhs}"
    return ""


def _result(name: str, pairs) -> CheckResult:
    failure = _first_failure(pairs)
    return CheckResult(name, not failure, failure)


def check_pell_fibonacci() -> CheckResult:
    """``P_n(x) = F_n(2x)`` as coefficients and at sample points, n <= 6."""
    F, P = _seq("fibonacci", 7), _seq("pell", 7)
    two_x = Polynomial((0, 2))
    pairs = [(f"n={n} coefficients", P[n], F[n].substitute(two_x)) for n in range(7)]
    pairs += [(f"n={n} at {x0}", P[n](x0), F[n](2 * x0)) for n in range(7) for x0 in (Fraction(3, 2), Fraction(-1, 3))]
    return _result("pell_fibonacci", pairs)


def check_morgan_voyce() -> CheckResult:
    """``b_n = B_n - B_{n-1}`` and ``x B_{n-1} = b_n - b_{n-1}``, 1 <= n <= 7."""
    B, b = _seq("morgan_voyce_B", 8), _seq("morgan_voyce_b", 8)
    pairs = [(f"b_{n}", b[n], B[n] - B[n - 1]) for n in range(1, 8)]
    pairs += [(f"x B_{n - 1}", B[n - 1].times_x(), b[n] - b[n - 1]) for n in range(1, 8)]
    return _result("morgan_voyce", pairs)


def check_chebyshev_kinds() -> CheckResult:
    """``2 T~_n = U_n - U_{n-2}``, 2 <= n <= 6."""
    U, T = _seq("chebyshev_u", 7), _seq("chebyshev_t", 7)
    return _result("chebyshev_kinds", [(f"n={n}", T[n].scale(2), U[n] - U[n - 2]) for n in range(2, 7)])


def check_boubaker_chebyshev() -> CheckResult:
    """Boubaker ``B_n(x) = U_n(x/2) + 3 U_{n-2}(x/2)``, 2 <= n <= 6."""
    U, Bb = _seq("chebyshev_u", 7), _seq("boubaker", 7)
    half = Polynomial((0, Fraction(1, 2)))
    pairs = [(f"n={n}", Bb[n], U[n].substitute(half) + U[n - 2].substitute(half).scale(3)) for n in range(2, 7)]
    return _result("boubaker_chebyshev", pairs)


def check_fermat_chebyshev() -> CheckResult:
    """Fermat ``F_n(x) = sqrt(2)^n U_n(3x / (2 sqrt 2))`` in rational form, n <= 6.

    Coefficient-wise this is ``fermat_{n,k} = u_{n,k} 2^((n-k)/2) (3/2)^k``;
    ``u_{n,k}`` vanishes when ``n - k`` is odd, so only even gaps carry weight.
    """
    U, Fm = _seq("chebyshev_u", 7), _seq("fermat", 7)
    pairs = []
    for n in range(7):
        for k in range(n + 1):
            u = U[n].coeff(k)
            if (n - k) % 2:
                pairs.append((f"odd gap u_{n},{k}", u, 0))
                want = Fraction(0)
            else:
                want = u * 2 ** ((n - k) // 2) * Fraction(3, 2) ** k
            pairs.append((f"fermat_{n},{k}", Fm[n].coeff(k), want))
    return _result("fermat_chebyshev", pairs)


def check_pidduck_mittag_leffler() -> CheckResult:
    """``P_n = M_0 + ... + M_n``, n <= 4."""
    P, M = _seq("pidduck", 5), _seq("mittag_leffler", 5)
    pairs = []
    for n in range(5):
        total = Polynomial((0,))
        for k in range(n + 1):
            total = total + M[k]
        pairs.append((f"n={n}", P[n], total))
    return _result("pidduck_mittag_leffler", pairs)


def check_laguerre_derivative() -> CheckResult:
    """``L'_n = -(L_0 + ... + L_{n-1})``, n <= 6."""
    L = _seq("laguerre", 7)
    pairs = []
    for n in range(7):
        total = Polynomial((0,))
        for k in range(n):
            total = total - L[k]
        pairs.append((f"n={n}", L[n].derivative(), total))
    return _result("laguerre_derivative", pairs)


def check_hermite_derivative() -> CheckResult:
    """``H'_n = 2 H_{n-1}``, 1 <= n <= 6."""
    H = _seq("hermite", 7)
    return _result("hermite_derivative", [(f"n={n}", H[n].derivative(), H[n - 1].scale(2)) for n in range(1, 7)])


def check_hermite_parity() -> CheckResult:
    """``H_n(-x) = (-1)^n H_n(x)``, n <= 8."""
    H = _seq("hermite", 9)
    minus_x = Polynomial((0, -1))
    return _result("hermite_parity", [(f"n={n}", H[n].substitute(minus_x), H[n].scale((-1) ** n)) for n in range(9)])


IDENTITY_CHECKS: dict[str, Callable[[], CheckResult]] = {
    "pell_fibonacci": check_pell_fibonacci,
    "morgan_voyce": check_morgan_voyce,
    "chebyshev_kinds": check_chebyshev_kinds,
    "boubaker_chebyshev": check_boubaker_chebyshev,
    "fermat_chebyshev": check_fermat_chebyshev,
    "pidduck_mittag_leffler": check_pidduck_mittag_leffler,
    "laguerre_derivative": check_laguerre_derivative,
    "hermite_derivative": check_hermite_derivative,
    "hermite_parity": check_hermite_parity,
}


def chebyshev_t_classical(R: int) -> tuple[Polynomial, ...]:
    """Classical ``T_n``: the perturbed family with ``1/2`` added back at ``n = 0``."""
    polys = list(_seq("chebyshev_t", R))
    if polys:
        polys[0] = polys[0] + Polynomial((Fraction(1, 2),))
    return tuple(polys)
