import pytest

from partparity.maass import (
    OutOfRange,
    borcherds_exponent,
    build_components,
    coefficient,
    packet_functional,
    psi_exponents,
    sparse_components,
)
from partparity.partitions import mock_f, mock_omega, partition_table


@pytest.fixture(scope="module")
def table():
    return build_components(600)


def test_leading_terms(table):
    assert coefficient(table, 1, -1) == 1
    assert coefficient(table, 5, -1) == -1
    assert all(coefficient(table, j, n) == 0 for j in (0, 3, 6, 9) for n in range(-1, 600))


def test_first_f_coefficient(table):
    assert coefficient(table, 1, 23) == 1


def test_symmetries(table):
    for n in range(-1, 501):
        assert coefficient(table, 7, n) == coefficient(table, 1, n)
        assert coefficient(table, 5, n) == -coefficient(table, 1, n)
        assert coefficient(table, 11, n) == -coefficient(table, 7, n)
        assert coefficient(table, 2, n) % 2 == 0


def test_support(table):
    for n in range(-1, 600):
        for j in (1, 5, 7, 11):
            if coefficient(table, j, n):
                assert (n + 1) % 24 == 0
        for j in (2, 4, 8, 10):
            if coefficient(table, j, n):
                assert n % 12 == 8


def test_omega_components_against_definition(table):
    w = mock_omega(60)
    for k in range(40):
        n = 8 + 12 * k
        sgn = (-1) ** k
        assert coefficient(table, 2, n) == 2 * (-w[k] + sgn * w[k])
        assert coefficient(table, 4, n) == -2 * (w[k] + sgn * w[k])
        assert coefficient(table, 8, n) == 2 * (w[k] + sgn * w[k])
        assert coefficient(table, 10, n) == 2 * (w[k] - sgn * w[k])


def test_out_of_range(table):
    with pytest.raises(OutOfRange):
        coefficient(table, 1, 600)
    with pytest.raises(ValueError):
        coefficient(table, 12, 5)


def test_sparse_matches_dense(table):
    sparse = sparse_components(range(-1, 600))
    for j in range(12):
        for n in range(-1, 600):
            assert sparse.coefficient(j, n) == table.coefficient(j, n)


def test_borcherds_exponents_d23():
    t = sparse_components(psi_exponents(23, 12))
    f = mock_f(60)
    assert borcherds_exponent(t, 23, 1) == f[1] == 1
    assert borcherds_exponent(t, 23, 3) == 0
    a47 = borcherds_exponent(t, 23, 7)
    assert a47 == f[47] and a47 % 2 == 0
    assert borcherds_exponent(t, 23, 5) == -f[24]
    # even m prime to 3 land on omega components: C(2; 92) = -4 omega_7
    assert borcherds_exponent(t, 23, 2) == -4 * mock_omega(8)[7] == -56


def test_exponent_parity_rule():
    D = 47
    t = sparse_components(psi_exponents(D, 40))
    pt = partition_table((D * 40 * 40 + 1) // 24 + 1)
    for m in range(1, 40):
        c = borcherds_exponent(t, D, m)
        if m % 2 and m % 3:
            assert c % 2 == pt[(D * m * m + 1) // 24] % 2
            # components 1, 7 carry +f and 5, 11 carry -f, so the sign follows m mod 6
            sign = 1 if m % 6 == 1 else -1
            assert c == sign * t.af[(D * m * m + 1) // 24]
        else:
            assert c % 2 == 0


def test_packet_functional(table):
    assert packet_functional(table, 23) == 4
    assert packet_functional(table, 24) == 0
    assert packet_functional(table, -1) == 4
    f = mock_f(30)
    for n in range(-1, 600):
        expect = 4 * f[(n + 1) // 24] if (n + 1) % 24 == 0 else 0
        assert packet_functional(table, n) == expect


def test_order_too_small():
    with pytest.raises(ValueError):
        build_components(10)
