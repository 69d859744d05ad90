from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partparity import qseries as qs
from partparity.arith import pentagonal_numbers
from partparity.qseries import (
    BitSeries,
    CycloElem,
    OrderMismatch,
    QuadElem,
    Series,
    gauss_sum_embed,
    lambert_term,
    quad_arith,
    quad_conj,
    quad_is_integral,
    quad_mod2,
    ser_exp,
    ser_inv,
    ser_log,
    ser_mul,
    ser_qdlog,
    ser_substitute,
)


def S(*c):
    return Series(c)


def euler_product(order):
    c = [0] * order
    for g, s in pentagonal_numbers(order):
        c[g] = s
    return Series(c)


def brute_partitions(n_max):
    # count partitions by largest part, independent of the pentagonal theorem
    p = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    for k in range(n_max + 1):
        p[0][k] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n_max + 1):
            p[n][k] = p[n][k - 1] + (p[n - k][k] if k <= n else 0)
    return [p[n][n] for n in range(n_max + 1)]


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


int_series = st.lists(st.integers(-20, 20), min_size=1, max_size=64)


class TestSeriesRing:
    def test_difference_of_squares(self):
        assert ser_mul(S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)

    def test_identity(self):
        f = S(3, -1, 4, 1, -5)
        assert f * Series.one(5) == f

    def test_partition_series_times_euler_product(self):
        P = Series(brute_partitions(99))
        assert ser_mul(P, euler_product(100)) == Series.one(100)

    def test_order_mismatch_strict(self):
        with pytest.raises(OrderMismatch):
            S(1, 2) * S(1, 2, 3)

    def test_non_strict_truncates(self):
        assert ser_mul(S(1, 2), S(1, 2, 3), strict=False) == S(1, 4)

    @given(int_series, int_series, int_series)
    @settings(max_examples=60, deadline=None)
    def test_ring_laws(self, a, b, c):
        n = min(len(a), len(b), len(c))
        f, g, h = Series(a[:n]), Series(b[:n]), Series(c[:n])
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


class TestInverse:
    def test_geometric(self):
        assert ser_inv(S(1, -1, 0, 0, 0)) == S(1, 1, 1, 1, 1)

    def test_involution(self):
        f = S(1, 3, -2, 7, 0, 1)
        assert ser_inv(ser_inv(f)) == f

    def test_inverse_euler_product_is_partitions(self):
        # p(0..49), counted by largest part
        assert ser_inv(euler_product(50)).coeffs == tuple(brute_partitions(49))

    def test_non_unit(self):
        with pytest.raises(qs.NonUnitError):
            ser_inv(S(2, 1))
        with pytest.raises(qs.NonUnitError):
            ser_inv(S(0, 1))

    def test_rational_unit(self):
        f = S(Fraction(2), Fraction(1), Fraction(0))
        assert f * ser_inv(f) == Series.one(3, Fraction(1))


class TestExpLog:
    def test_exp_zero(self):
        assert ser_exp(S(0, 0, 0)) == S(1, 0, 0)

    def test_exp_q(self):
        assert ser_exp(S(0, 1, 0, 0)) == S(1, 1, Fraction(1, 2), Fraction(1, 6))

    def test_exp_log_one_plus_q(self):
        assert ser_exp(ser_log(S(1, 1, 0, 0, 0))) == S(1, 1, 0, 0, 0)

    def test_log_one(self):
        assert ser_log(S(1, 0, 0)) == S(0, 0, 0)

    def test_mercator(self):
        assert ser_log(S(1, -1, 0, 0)) == S(0, -1, Fraction(-1, 2), Fraction(-1, 3))

    def test_errors(self):
        with pytest.raises(ValueError):
            ser_exp(S(1, 1))
        with pytest.raises(ValueError):
            ser_log(S(2, 1))

    @given(st.lists(st.integers(-5, 5), min_size=31, max_size=31))
    @settings(max_examples=100, deadline=None)
    def test_log_exp_roundtrip(self, tail):
        s = Series([0] + tail)
        assert ser_log(ser_exp(s)) == s

    @given(st.lists(st.integers(-4, 4), min_size=29, max_size=29),
           st.lists(st.integers(-4, 4), min_size=29, max_size=29))
    @settings(max_examples=25, deadline=None)
    def test_log_homomorphism(self, a, b):
        f, g = Series([1] + a), Series([1] + b)
        assert ser_log(f * g) == ser_log(f) + ser_log(g)


class TestQdlog:
    def test_one_minus_q(self):
        assert ser_qdlog(S(1, -1, 0, 0, 0)) == S(0, -1, -1, -1, -1)

    def test_partition_series_gives_divisor_sums(self):
        P = Series(brute_partitions(9))
        assert ser_qdlog(P).coeffs == tuple([0] + [sigma(n) for n in range(1, 10)])
        assert ser_qdlog(P)[1:4] == (1, 3, 4)

    @given(st.lists(st.integers(-6, 6), min_size=24, max_size=24),
           st.lists(st.integers(-6, 6), min_size=24, max_size=24),
           st.sampled_from([1, -1]), st.sampled_from([1, -1]))
    @settings(max_examples=40, deadline=None)
    def test_additive(self, a, b, ua, ub):
        f, g = Series([ua] + a), Series([ub] + b)
        assert ser_qdlog(f * g) == ser_qdlog(f) + ser_qdlog(g)


class TestSubstituteLambert:
    def test_dilation(self):
        f = Series([1, 1] + [0] * 28)
        assert ser_substitute(f, 24) == Series.from_terms({0: 1, 24: 1}, 30)

    def test_identity(self):
        f = S(1, 2, 3, 4)
        assert ser_substitute(f, 1) == f

    def test_sign_twist(self):
        f = S(1, 2, 3, 4, 5, 6, 7)
        assert ser_substitute(f, 2, -1) == S(1, 0, -2, 0, 3, 0, -4)

    def test_larger_output_order(self):
        f = S(5, 7)
        assert ser_substitute(f, 12, 1, order=20) == Series.from_terms({0: 5, 12: 7}, 20)
        with pytest.raises(ValueError):
            ser_substitute(f, 12, 1, order=30)

    def test_lambert(self):
        assert lambert_term(1, 5) == S(0, 1, 1, 1, 1)
        assert lambert_term(3, 10) == Series.from_terms({3: 1, 6: 1, 9: 1}, 10)
        with pytest.raises(ValueError):
            lambert_term(0, 5)


D = 23
r = QuadElem.sqrt(D)


class TestQuad:
    def test_norm(self):
        assert quad_arith(1 + r, 1 - r, "mul") == 24

    def test_square(self):
        assert r * r == -23

    def test_rationalize(self):
        assert quad_arith(QuadElem(1, 0, D), 1 + r, "div") == (1 - r) / 24

    def test_div_zero(self):
        with pytest.raises(ZeroDivisionError):
            quad_arith(r, QuadElem(0, 0, D), "div")

    def test_conj(self):
        assert quad_conj(r) == -r
        a = QuadElem(Fraction(3, 7), Fraction(-2, 5), D)
        assert quad_conj(quad_conj(a)) == a
        n = a * quad_conj(a)
        assert n.y == 0 and n.x == a.norm()

    def test_integral(self):
        assert quad_is_integral(QuadElem.omega(D))
        assert not quad_is_integral(QuadElem(Fraction(1, 2), 0, D))
        assert quad_is_integral(3 - 2 * r)

    def test_mod2(self):
        assert quad_mod2(r) == 1
        assert quad_mod2(QuadElem.omega(D)) == 0
        assert quad_mod2(QuadElem(3, 0, D)) == 1
        with pytest.raises(ValueError):
            quad_mod2(QuadElem(Fraction(1, 2), 0, D))

    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
           st.sampled_from([23, 47, 71, 119]))
    def test_mod2_homomorphism(self, u1, v1, u2, v2, d):
        w = QuadElem.omega(d)
        a, b = u1 + v1 * w, u2 + v2 * w
        assert (a * b).mod2() == (a.mod2() * b.mod2()) % 2
        assert (a + b).mod2() == (a.mod2() + b.mod2()) % 2


class TestCyclo:
    @pytest.mark.parametrize("d", [23, 47, 71])
    def test_gauss_square(self, d):
        G = gauss_sum_embed(d)
        assert G * G == -d

    def test_odd_symmetry(self):
        from partparity.arith import kronecker_symbol

        vec = [kronecker_symbol(-23, b) for b in range(23)]
        assert all(vec[b] == -vec[23 - b] for b in range(1, 23))

    def test_zeta_order(self):
        z = CycloElem.zeta_power(7, 1)
        x = CycloElem.scalar(7, 1)
        for _ in range(7):
            x = x * z
        assert x == 1

    def test_invalid(self):
        with pytest.raises(ValueError):
            gauss_sum_embed(25)
        with pytest.raises(ValueError):
            gauss_sum_embed(7)

    def test_cyclotomic_poly(self):
        assert qs.cyclotomic_poly(1) == (-1, 1)
        assert qs.cyclotomic_poly(6) == (1, -1, 1)
        assert qs.cyclotomic_poly(23) == (1,) * 23


bit_units = st.integers(0, 2**127 - 1).map(lambda b: BitSeries(128, b | 1))


class TestBitSeries:
    def test_xor_addition(self):
        a = BitSeries(8, 0b1011)
        assert a + a == BitSeries(8, 0)

    def test_mul_matches_integer_series(self):
        f = S(1, 1, 0, 1, 1, 0, 0, 1)
        g = S(1, 0, 1, 1, 0, 1, 1, 0)
        assert BitSeries.from_series(f) * BitSeries.from_series(g) == BitSeries.from_series(f * g)

    @given(bit_units)
    @settings(max_examples=50)
    def test_inverse(self, f):
        assert f * f.inverse() == BitSeries.one(128)

    @given(bit_units)
    @settings(max_examples=50)
    def test_square_kernel(self, f):
        assert not (f * f).qdlog()

    def test_qdlog_matches_integer_reduction(self):
        f = S(1, 1, 0, 1, 1, 0, 1, 0, 0, 1)
        assert BitSeries.from_series(ser_qdlog(f)) == BitSeries.from_series(f).qdlog()

    def test_sqrt(self):
        f = BitSeries(16, 0b1011)
        sq = f * f
        assert sq.sqrt() == BitSeries(8, 0b1011)
        with pytest.raises(ValueError):
            f.sqrt()
