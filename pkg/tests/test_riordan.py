import json
from fractions import Fraction as F
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from riordanpoly import riordan as RA
from riordanpoly import series as S
from riordanpoly.errors import (
    InsufficientTruncation,
    NotProper,
    NotRiordan,
    ZeroConstantTerm,
    ZeroDiagonal,
)
from riordanpoly.riordan import RiordanSpec, Triangle
from riordanpoly.series import Series

from strategies import nonzero_rationals, specs, unit_series


def spec(f, g, N):
    return RiordanSpec.of(f, g, N)


def rows(*rs):
    return Triangle(tuple(tuple(F(c) for c in r) for r in rs))


PASCAL = spec([1], [1, -1], 8)


def binomial_rows(R, sign=False):
    return Triangle(tuple(
        tuple(F((-1) ** (n - k) * comb(n, k) if sign else comb(n, k)) for k in range(n + 1))
        for n in range(R)
    ))


def brute_matrix_product(a: Triangle, b: Triangle) -> list[list[F]]:
    """Full square product with explicit zeros above the diagonal."""
    R = a.row_count
    A = [[a.entry(i, j) for j in range(R)] for i in range(R)]
    B = [[b.entry(i, j) for j in range(R)] for i in range(R)]
    return [[sum((A[i][k] * B[k][j] for k in range(R)), F(0)) for j in range(R)] for i in range(R)]


def as_square(t: Triangle) -> list[list[F]]:
    return [[t.entry(i, j) for j in range(t.row_count)] for i in range(t.row_count)]


# build_triangle


def test_fibonacci_rows():
    got = RA.build_triangle(spec([1], [1, 0, -1], 6), 7)
    assert got == rows([1], [0, 1], [1, 0, 1], [0, 2, 0, 1], [1, 0, 3, 0, 1], [0, 3, 0, 4, 0, 1],
                       [1, 0, 6, 0, 5, 0, 1])


def test_pell_rows():
    got = RA.build_triangle(spec([F(1, 2)], [F(1, 2), 0, F(-1, 2)], 5), 6)
    assert got == rows([1], [0, 2], [1, 0, 4], [0, 4, 0, 8], [1, 0, 12, 0, 16], [0, 6, 0, 32, 0, 32])


def test_identity_rows():
    assert RA.build_triangle(spec([1], [1], 9), 10) == Triangle.identity(10)


def test_boubaker_rows():
    got = RA.build_triangle(spec([1, 0, 3], [1, 0, 1], 6), 7)
    assert got == rows([1], [0, 1], [2, 0, 1], [0, 1, 0, 1], [-2, 0, 0, 0, 1], [0, -3, 0, -1, 0, 1],
                       [2, 0, -3, 0, -2, 0, 1])


def test_pascal_rows_are_binomials():
    assert RA.build_triangle(PASCAL, 9) == binomial_rows(9)


def test_build_needs_truncation():
    with pytest.raises(InsufficientTruncation):
        RA.build_triangle(spec([1], [1, -1], 3), 6)


def test_spec_requires_unit_g():
    with pytest.raises(ZeroConstantTerm):
        spec([1], [0, 1], 3)


def test_properness_flag():
    assert spec([1], [1], 2).proper
    assert not spec([0, 1], [1], 2).proper


# column_gf


def test_pascal_columns():
    assert RA.column_gf(PASCAL, 0, 8) == S.named_series("geometric", 8)
    # x/(1-x)^2 = sum n x^n
    assert RA.column_gf(PASCAL, 1, 8) == Series(tuple(F(n) for n in range(9)))


@given(specs(6))
def test_column_zero_is_f_over_g(s):
    assert RA.column_gf(s, 0, 6) == S.divide(s.f, s.g)


@given(specs(9))
def test_columns_match_construction(s):
    R = 10
    t = RA.build_triangle(s, R)
    for k in range(R):
        assert list(RA.column_gf(s, k, R - 1).coeffs) == t.column(k)


# act


@pytest.mark.parametrize("t0", [F(1), F(2), F(-1, 2)])
def test_fibonacci_action_on_geometric(t0):
    N = 10
    fib = spec([1], [1, 0, -1], N)
    h = Series(tuple(t0**n for n in range(N + 1)))
    expected = S.reciprocal(Series.of([1, -t0, -1], N))
    assert RA.act(fib, h) == expected.truncate(RA.act(fib, h).trunc_order)


@given(unit_series(6))
def test_identity_action(h):
    assert RA.act(spec([1], [1], 6), h) == h


def test_pascal_acts_on_one():
    assert RA.act(PASCAL, Series.monomial(0, 8)) == S.named_series("geometric", 8)


# product


def test_morgan_voyce_factorisation():
    got = RA.product(spec([1, -1], [1], 6), spec([1], [1, -2, 1], 6))
    assert got == spec([1, -1], [1, -2, 1], 6)


def test_pell_factorisation():
    N = 6
    got = RA.product(RA.product(spec([F(1, 2)], [1], N), spec([1], [1, 0, -1], N)), spec([1], [F(1, 2)], N))
    assert got == spec([F(1, 2)], [F(1, 2), 0, F(-1, 2)], N)


@given(specs(6))
def test_product_with_identity(a):
    assert RA.product(a, RA.identity(6)) == a
    assert RA.product(RA.identity(6), a) == a


@given(specs(7), specs(7))
def test_product_is_matrix_product(a, b):
    R = 8
    lhs = RA.build_triangle(RA.product(a, b), R)
    assert as_square(lhs) == brute_matrix_product(RA.build_triangle(a, R), RA.build_triangle(b, R))


@given(specs(7), specs(7), specs(7))
def test_product_associative(a, b, c):
    R = 8
    left = RA.product(RA.product(a, b), c)
    right = RA.product(a, RA.product(b, c))
    assert RA.build_triangle(left, R) == RA.build_triangle(right, R)


# inverse


def test_pascal_inverse_signed_binomials():
    R = 6
    inv = RA.inverse(PASCAL.truncate(R - 1), R)
    assert RA.build_triangle(inv, R) == binomial_rows(R, sign=True)
    oracle = sympy.Matrix(as_square(binomial_rows(R))).applyfunc(sympy.Rational).inv()
    assert as_square(binomial_rows(R, sign=True)) == [[F(str(oracle[i, j])) for j in range(R)] for i in range(R)]


def test_identity_inverse():
    assert RA.build_triangle(RA.inverse(RA.identity(5), 6), 6) == Triangle.identity(6)


def test_inverse_needs_proper():
    with pytest.raises(NotProper):
        RA.inverse(spec([0, 1], [1], 5), 6)


@given(specs(7))
def test_group_inverse(a):
    R = 8
    inv = RA.inverse(a, R)
    assert RA.build_triangle(RA.product(a, inv), R) == Triangle.identity(R)
    assert RA.build_triangle(RA.product(inv, a), R) == Triangle.identity(R)


def test_triangle_inverse_zero_diagonal():
    with pytest.raises(ZeroDiagonal):
        rows([1], [1, 0]).inverse()


# recover_spec


def test_recover_pascal():
    got = RA.recover_spec(RA.build_triangle(PASCAL, 6))
    assert got.f.trimmed() == (1,)
    assert got.g.trimmed() == (1, -1)


def test_recover_printed_fibonacci():
    printed = rows([1], [0, 1], [1, 0, 1], [0, 2, 0, 1], [1, 0, 3, 0, 1], [0, 3, 0, 4, 0, 1],
                   [1, 0, 6, 0, 5, 0, 1])
    got = RA.recover_spec(printed)
    assert got.f.trimmed() == (1,)
    assert got.g.trimmed() == (1, 0, -1)


def test_recover_identity():
    got = RA.recover_spec(Triangle.identity(5))
    assert got.f.trimmed() == (1,) and got.g.trimmed() == (1,)


def test_recover_needs_two_rows():
    with pytest.raises(InsufficientTruncation):
        RA.recover_spec(rows([1]))


def test_recover_zero_diagonal():
    with pytest.raises(ZeroDiagonal):
        RA.recover_spec(rows([1], [0, 0], [1, 0, 1]))


@given(specs(7))
def test_recover_round_trip(s):
    R = 8
    t = RA.build_triangle(s, R)
    got = RA.recover_spec(t)
    # R rows see g only up to g_{R-2}; f/g is fully determined
    assert got.g.coeffs[: R - 1] == s.g.coeffs[: R - 1]
    assert S.divide(got.f, got.g) == S.divide(s.f, s.g)
    assert RA.build_triangle(got, R) == t


@given(specs(7), st.data())
def test_perturbation_detected(s, data):
    R = 8
    t = RA.build_triangle(s, R)
    n = data.draw(st.integers(min_value=3, max_value=R - 1))
    j = data.draw(st.integers(min_value=2, max_value=n - 1))
    delta = data.draw(nonzero_rationals)
    perturbed = [list(r) for r in t.rows]
    perturbed[n][j] += delta
    with pytest.raises(NotRiordan) as err:
        RA.recover_spec(Triangle(tuple(tuple(r) for r in perturbed)))
    assert err.value.location == (n, j)


def test_last_row_column_one_is_absorbed_by_g():
    t = [list(r) for r in RA.build_triangle(PASCAL, 5).rows]
    t[4][1] += 1
    got = RA.recover_spec(Triangle(tuple(tuple(r) for r in t)))
    assert RA.build_triangle(got, 5).rows[4][1] == 5


# (d, h) notation


def test_dh_pascal():
    geo = S.named_series("geometric", 6)
    got = RA.from_dh_notation(geo, geo)
    assert got == spec([1], [1, -1], 6)


def test_dh_identity():
    one = Series.monomial(0, 5)
    assert RA.from_dh_notation(one, one) == RA.identity(5)


@given(unit_series(6), unit_series(6))
def test_dh_round_trip(d, h):
    assert RA.to_dh_notation(RA.from_dh_notation(d, h)) == (d, h)


def test_dh_needs_units():
    with pytest.raises(ZeroConstantTerm):
        RA.from_dh_notation(Series.of([1], 3), Series.of([0, 1], 3))


# shifts


def test_shift_up_fibonacci_relation():
    from riordanpoly.polyseq import Polynomial, sequence_from_spec

    fib = spec([1], [1, 0, -1], 7)
    up = RA.shift_up(fib)
    assert up == spec([1, 0, -1], [1, 0, -1], 7)
    p = sequence_from_spec(fib, 8).polys
    q = sequence_from_spec(up, 8).polys
    for n in range(1, 8):
        assert q[n] == p[n - 1].times_x() + Polynomial((fib.f[n],))


@given(specs(6, proper=False))
def test_shift_down_undoes_shift_up(s):
    assert RA.shift_down(RA.shift_up(s)) == s


@given(specs(7, proper=False))
def test_shift_down_deletes_first_row_and_column(s):
    assert RA.build_triangle(RA.shift_down(s), 7) == RA.build_triangle(s, 8).drop_first()


def test_shift_down_pascal():
    down = RA.shift_down(PASCAL)
    assert down.f == S.named_series("geometric", 8)
    assert RA.build_triangle(down, 7) == binomial_rows(8).drop_first()


# a_sequence


def test_a_sequence_of_one():
    assert RA.a_sequence(Series.monomial(0, 6), 6) == Series.monomial(0, 6)


def test_a_sequence_pascal():
    N = 8
    g = Series.of([1, -1], N)
    A = RA.a_sequence(g, N)
    # A(x/(1-x)) = 1/(1-x) forces A = 1 + x
    assert A == Series.of([1, 1], N)
    assert S.compose(A, S.reciprocal(g).shift(1)).truncate(N) == S.reciprocal(g)


@given(unit_series(10))
def test_a_sequence_defining_equation(g):
    A = RA.a_sequence(g, 10)
    lhs = S.compose(A, S.reciprocal(g).shift(1))
    assert lhs.truncate(10) == S.reciprocal(g)


def test_a_sequence_truncation():
    with pytest.raises(InsufficientTruncation):
        RA.a_sequence(Series.of([1, -1], 4), 9)


# triangle formats


def test_formats_round_trip():
    t = RA.build_triangle(spec([F(1, 2)], [F(1, 2), F(1, 3)], 5), 6)
    assert Triangle.from_json(t.to_json()) == t
    assert Triangle.from_csv(t.to_csv()) == t
    assert Triangle.parse(t.to_json()) == t and Triangle.parse(t.to_csv()) == t
    assert json.loads(t.to_json())["rows"][1] == ["-2/3", "2"]


def test_csv_has_empty_cells_past_diagonal():
    assert rows([1], [2, 3]).to_csv() == "1,\n2,3\n"


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        Triangle(((F(1),), (F(1),)))
