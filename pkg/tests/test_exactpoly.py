from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from derangb.exactpoly import (
    NEG_INF,
    EgfSeries,
    IntPoly,
    RatPoly,
    add,
    egf_inverse,
    egf_mul,
    er_operator,
    exact_div,
    mul,
    poly_divmod,
    poly_gcd,
    reverse,
    series_div_one_minus_x_pow,
)

small_ints = st.integers(min_value=-50, max_value=50)
polys = st.lists(small_ints, max_size=7).map(IntPoly)


def schoolbook(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def test_add_examples():
    assert add(IntPoly([0, 3]), IntPoly([0, 1, 1])) == IntPoly([0, 4, 1])
    p = IntPoly([2, 0, 5])
    assert add(p, IntPoly()) == p
    x = IntPoly.x()
    d = x - x
    assert d.coeffs == () and d.is_zero()


def test_mul_examples():
    assert mul(IntPoly([1, 1]), IntPoly([1, 4, 1])) == IntPoly([1, 5, 5, 1])
    p = IntPoly([3, -1, 2])
    assert mul(p, IntPoly.one()) == p
    assert mul(p, IntPoly()).is_zero()


def test_zero_degree_is_minus_infinity():
    assert IntPoly().degree() == NEG_INF
    assert IntPoly([0, 0, 0]).coeffs == ()
    assert IntPoly([4]).degree() == 0
    assert IntPoly([1, 2, 0, 0]).degree() == 1


def test_reverse_examples():
    assert reverse(IntPoly([1, 3]), 2) == IntPoly([0, 3, 1])
    assert reverse(IntPoly(), 5).is_zero()
    f_minus_3 = IntPoly([0, 1, 13, 1])
    assert reverse(f_minus_3, 4) == f_minus_3
    with pytest.raises(ValueError):
        reverse(IntPoly([1, 2, 3]), 1)


def test_er_operator_examples():
    p = IntPoly([1, 1]) ** 3 * IntPoly([1, 4, 1])
    assert er_operator(p, 2) == IntPoly([1, 16, 7])
    assert er_operator(p, 1) == p
    assert er_operator(IntPoly([1, 5, 9]), 2) == IntPoly([1, 9])
    with pytest.raises(ValueError):
        er_operator(p, 0)


def test_series_div_examples():
    assert series_div_one_minus_x_pow(IntPoly([1, 3]), 2, 2) == IntPoly([1, 5, 9])
    assert series_div_one_minus_x_pow(IntPoly([1]), 1, 3) == IntPoly([1, 1, 1, 1])
    got = series_div_one_minus_x_pow(IntPoly([1, 16, 7]), 3, 2)
    assert got == IntPoly([(2 * i + 1) ** 3 - (2 * i) ** 3 for i in range(3)]) == IntPoly([1, 19, 61])
    assert isinstance(got, RatPoly)


@given(polys, polys)
def test_mul_matches_schoolbook(p, q):
    assert list((p * q).coeffs) == schoolbook(list(p.coeffs), list(q.coeffs))


@given(polys, polys)
def test_add_matches_naive(p, q):
    n = max(len(p.coeffs), len(q.coeffs))
    naive = [p[i] + q[i] for i in range(n)]
    while naive and naive[-1] == 0:
        naive.pop()
    assert list((p + q).coeffs) == naive


@given(polys, st.integers(min_value=0, max_value=4))
def test_reverse_involution(p, extra):
    m = max(p.degree(), 0) + extra if not p.is_zero() else extra
    assert reverse(reverse(p, m), m) == p


@given(polys, polys, st.integers(min_value=1, max_value=4))
def test_er_linear(p, q, r):
    assert er_operator(p + q, r) == er_operator(p, r) + er_operator(q, r)


@given(polys, st.integers(min_value=0, max_value=8))
def test_series_div_zero_power_truncates(p, k):
    assert series_div_one_minus_x_pow(p, 0, k) == p.truncate(k)


@given(polys, st.integers(min_value=0, max_value=4))
def test_series_div_inverts_multiplication(p, n):
    order = 6
    q = series_div_one_minus_x_pow(p, n, order)
    assert (q * IntPoly([1, -1]) ** n).truncate(order) == p.truncate(order)


def test_poly_value_and_json_roundtrip():
    p = IntPoly([0, 15, 87, 15])
    assert p(1) == 117
    assert IntPoly.from_json(p.to_json()) == p
    assert p.to_dict() == {"var": "x", "coeffs": ["0", "15", "87", "15"]}
    assert IntPoly.from_csv_rows(p.csv_rows()) == p
    big = IntPoly([10**40, -(10**30)])
    assert IntPoly.from_json(big.to_json()) == big


def test_intpoly_rejects_fractions():
    with pytest.raises(TypeError):
        IntPoly([Fraction(1, 2)])


def test_mixed_arithmetic_promotes():
    r = IntPoly([1, 1]) * RatPoly([Fraction(1, 2)])
    assert isinstance(r, RatPoly)
    assert r == RatPoly([Fraction(1, 2), Fraction(1, 2)])


def test_divmod_and_gcd():
    a = IntPoly([1, 1]) * IntPoly([2, 3]) * IntPoly([-1, 1])
    b = IntPoly([1, 1]) * IntPoly([5, 0, 1])
    q, r = poly_divmod(a, IntPoly([1, 1]))
    assert r.is_zero() and q == IntPoly([2, 3]) * IntPoly([-1, 1])
    assert poly_gcd(a, b) == RatPoly([1, 1])
    assert exact_div(a, IntPoly([1, 1])) == q
    with pytest.raises(ValueError):
        exact_div(IntPoly([1, 0, 1]), IntPoly([1, 1]))


def test_egf_mul_examples():
    e = EgfSeries.exp(1, 3)
    assert egf_mul(e, e) == EgfSeries.exp(2, 3)
    assert [c for c in egf_mul(e, e).coeffs] == [RatPoly([2**n]) for n in range(4)]
    a = EgfSeries.exp(IntPoly([1, 2]), 4)
    assert egf_mul(a, EgfSeries.identity(4)) == a
    with pytest.raises(ValueError):
        egf_mul(EgfSeries.exp(1, 3), EgfSeries.exp(1, 4))


def test_egf_inverse_examples():
    assert egf_inverse(EgfSeries.exp(1, 5)) == EgfSeries.exp(-1, 5)
    assert egf_inverse(EgfSeries.identity(3)) == EgfSeries.identity(3)
    with pytest.raises(ValueError):
        egf_inverse(EgfSeries.from_entries([0, 1], 3))
    with pytest.raises(ValueError):
        egf_inverse(EgfSeries.from_entries([IntPoly([1, 1])], 3))


def test_derangement_egf_third_coefficient():
    # (1 - x) / (e^{xt} - x e^t)
    x = IntPoly.x()
    den = EgfSeries.exp(x, 3) - EgfSeries.exp(1, 3).scale(x)
    d = egf_inverse(den.divide_poly(IntPoly([1, -1])))
    assert d.int_entry(3) == IntPoly([0, 1, 1])


def test_composed_egf_gives_type_b_derangements():
    order = 4
    x = IntPoly.x()
    e1, ex = EgfSeries.exp(1, order), EgfSeries.exp(x, order)
    inv = egf_inverse((ex - e1.scale(x)).divide_poly(IntPoly([1, -1])))
    a = (e1 - ex).divide_poly(IntPoly([1, -1])) * inv
    ident = EgfSeries.identity(order)
    db = inv * (ident + a.scale(x)) * egf_inverse(ident - (a * a).scale(x))
    assert db.int_entry(4) == IntPoly([0, 16, 144, 72, 1])


egf_entries = st.lists(st.lists(small_ints, max_size=3).map(IntPoly), min_size=4, max_size=4)


@given(egf_entries, egf_entries, egf_entries)
def test_egf_mul_commutative_associative(a, b, c):
    a, b, c = (EgfSeries.from_entries(v, 3) for v in (a, b, c))
    assert egf_mul(a, b) == egf_mul(b, a)
    assert egf_mul(egf_mul(a, b), c) == egf_mul(a, egf_mul(b, c))


@given(egf_entries, st.integers(min_value=1, max_value=5))
def test_egf_inverse_is_inverse(entries, c0):
    a = EgfSeries.from_entries([IntPoly([c0])] + entries[1:], 3)
    assert egf_mul(a, egf_inverse(a)) == EgfSeries.identity(3)


def test_egf_binomial_convolution_by_hand():
    a = EgfSeries.from_entries([1, 2, 3], 2)
    b = EgfSeries.from_entries([5, 7, 11], 2)
    got = egf_mul(a, b)
    assert got.coeffs[2] == RatPoly([1 * 11 + math.comb(2, 1) * 2 * 7 + 3 * 5])
