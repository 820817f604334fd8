from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from tpkit.exact import (
    Poly,
    SeriesPrefix,
    exp_series,
    format_rat,
    parse_rat,
    pole_power_series,
    poly_gcd,
    series_add,
    series_derivative_shifted,
    series_inverse,
    series_product,
    series_scale,
    series_shift,
    series_subs_scale,
    taylor_coefficients_at,
)

from conftest import coeff_lists, positive_rationals, rationals

F = Fraction


def naive_cauchy(u, v, n):
    return [sum(u[i] * v[k - i] for i in range(k + 1)) for k in range(n)]


class TestRationalText:
    @pytest.mark.parametrize("text,value", [("3", F(3)), ("-7/21", F(-1, 3)), (" 5 / 10 ", F(1, 2)), ("+4", F(4))])
    def test_parse(self, text, value):
        assert parse_rat(text) == value

    @pytest.mark.parametrize("bad", ["0.5", "1e3", "1/0", "", "a/b", "1//2"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rat(bad)

    def test_parse_rejects_float(self):
        with pytest.raises(TypeError):
            parse_rat(0.5)

    @given(rationals(-10**6, 10**6, 10**6))
    def test_round_trip(self, x):
        assert parse_rat(format_rat(x)) == x


class TestPoly:
    def test_trimming_and_degree(self):
        assert Poly([1, 2, 0, 0]).coeffs == (F(1), F(2))
        assert Poly([0, 0]).degree is None
        assert Poly([5]).degree == 0

    def test_evaluation(self):
        p = Poly([1, -3, 0, 2])
        assert p(F(1, 2)) == 1 - F(3, 2) + F(2, 8)

    @given(coeff_lists(), coeff_lists(), rationals())
    def test_ring_homomorphism(self, a, b, x):
        p, q = Poly(a), Poly(b)
        assert (p * q)(x) == p(x) * q(x)
        assert (p + q)(x) == p(x) + q(x)
        assert (p - q)(x) == p(x) - q(x)

    @given(coeff_lists(), coeff_lists())
    def test_division_identity(self, a, b):
        p, d = Poly(a), Poly(b)
        if d.is_zero():
            return
        q, r = divmod(p, d)
        assert q * d + r == p
        assert r.is_zero() or r.degree < d.degree

    @given(coeff_lists(max_size=4), coeff_lists(max_size=4), coeff_lists(max_size=3))
    def test_gcd_divides_both(self, a, b, c):
        g0 = Poly(c)
        if g0.is_zero():
            return
        p, q = Poly(a) * g0, Poly(b) * g0
        if p.is_zero() or q.is_zero():
            return
        g = poly_gcd(p, q)
        assert (p % g).is_zero() and (q % g).is_zero()
        assert g.degree >= g0.degree
        assert g.lead == 1

    def test_derivative(self):
        assert Poly([1, 1, 1, 1]).derivative() == Poly([1, 2, 3])
        assert Poly([1, 1, 1, 1]).derivative(2) == Poly([2, 6])

    @given(coeff_lists(max_size=6), rationals())
    def test_taylor_shift_reassembles(self, a, x0):
        p = Poly(a)
        cs = taylor_coefficients_at(p, x0)
        shifted = sum((Poly([-x0, 1]) ** j * c for j, c in enumerate(cs)), Poly())
        assert shifted == p


class TestSeriesPrefix:
    def test_geometric_times_one_minus_z(self):
        ones = SeriesPrefix.of([1] * 6)
        out = series_product(ones, SeriesPrefix.of([1, -1], exact_tail=True, N=6))
        assert out.coeffs == (1, 0, 0, 0, 0, 0)

    def test_binomial_square(self):
        one_plus = SeriesPrefix.of([1, 1], exact_tail=True, N=3)
        out = series_product(one_plus, one_plus)
        assert out.coeffs == (1, 2, 1)
        assert out.exact_tail

    def test_product_inexact_when_degree_overflows(self):
        p = SeriesPrefix.of([1, 1], exact_tail=True, N=2)
        assert not series_product(p, p).exact_tail

    def test_scaled_pole_product(self):
        u = series_scale(series_product(pole_power_series(1, 1, 5), pole_power_series(F(1, 2), 1, 5)), F(1, 2))
        assert u.coeffs == (F(1, 2), F(3, 4), F(7, 8), F(15, 16), F(31, 32))

    def test_index_weighting(self):
        assert series_derivative_shifted(SeriesPrefix.of([1] * 4)).coeffs == (0, 1, 2, 3)
        out = series_derivative_shifted(SeriesPrefix.of([F(1, 2), F(3, 4), F(7, 8), F(15, 16)]))
        assert out.coeffs == (0, F(3, 4), F(7, 4), F(45, 16))
        zero = SeriesPrefix.of([0, 0, 0], exact_tail=True)
        assert series_derivative_shifted(zero) == zero

    @pytest.mark.parametrize(
        "gamma,N,expected",
        [(0, 4, (1, 0, 0, 0)), (1, 4, (1, 1, F(1, 2), F(1, 6))), (2, 3, (1, 2, 2))],
    )
    def test_exp(self, gamma, N, expected):
        assert exp_series(gamma, N).coeffs == expected

    @pytest.mark.parametrize(
        "beta,m,N,expected",
        [(1, 1, 4, (1, 1, 1, 1)), (1, 2, 4, (1, 2, 3, 4)), (F(1, 2), 3, 3, (1, F(3, 2), F(3, 2)))],
    )
    def test_pole_power(self, beta, m, N, expected):
        assert pole_power_series(beta, m, N).coeffs == expected

    @given(positive_rationals(), st.integers(1, 4))
    def test_pole_power_is_repeated_product(self, beta, m):
        N = 8
        acc = SeriesPrefix.of([1], exact_tail=True, N=N)
        for _ in range(m):
            acc = series_product(acc, pole_power_series(beta, 1, N))
        assert acc.coeffs == pole_power_series(beta, m, N).coeffs

    @given(positive_rationals(), positive_rationals())
    def test_exp_is_a_homomorphism(self, g, h):
        assert series_product(exp_series(g, 8), exp_series(h, 8)).coeffs == exp_series(g + h, 8).coeffs

    @given(coeff_lists(min_size=6, max_size=6), coeff_lists(min_size=6, max_size=6))
    def test_product_matches_naive_convolution(self, a, b):
        out = series_product(SeriesPrefix.of(a), SeriesPrefix.of(b))
        assert list(out.coeffs) == naive_cauchy(a, b, 6)

    @given(coeff_lists(min_size=5, max_size=5))
    def test_inverse(self, a):
        if a[0] == 0:
            return
        u = SeriesPrefix.of(a)
        assert series_product(u, series_inverse(u)).coeffs == (1, 0, 0, 0, 0)

    def test_inverse_rejects_zero_constant(self):
        with pytest.raises(ZeroDivisionError):
            series_inverse(SeriesPrefix.of([0, 1]))

    def test_shift_and_substitution(self):
        u = SeriesPrefix.of([1, 2, 3, 4])
        assert series_shift(u, 2).coeffs == (0, 0, 1, 2)
        assert series_subs_scale(u, 2).coeffs == (1, 4, 12, 32)
        with pytest.raises(ValueError):
            series_shift(u, -1)

    def test_add(self):
        u = SeriesPrefix.of([1, 2], exact_tail=True, N=3)
        v = SeriesPrefix.of([-1, -2], exact_tail=True, N=3)
        s = series_add(u, v)
        assert s.coeffs == (0, 0, 0) and s.exact_tail

    def test_coeff_beyond_prefix(self):
        assert SeriesPrefix.of([1, 1], exact_tail=True).coeff(10) == 0
        with pytest.raises(IndexError):
            SeriesPrefix.of([1, 1]).coeff(10)

    def test_length_validation(self):
        with pytest.raises(ValueError):
            SeriesPrefix((F(1),), 2)
        with pytest.raises(ValueError):
            SeriesPrefix.of([1], N=3)

    @given(coeff_lists(), st.booleans())
    def test_json_round_trip(self, a, exact):
        u = SeriesPrefix.of(a, exact_tail=exact)
        assert SeriesPrefix.from_json(u.to_json()) == u

    def test_binomial_coefficients_of_power(self):
        p = Poly([1, 1]) ** 6
        assert list(p.coeffs) == [comb(6, k) for k in range(7)]
        assert exp_series(1, 7).coeffs == tuple(F(1, factorial(k)) for k in range(7))
