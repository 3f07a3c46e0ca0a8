import pytest

from oracles import colored_partitions_brute
from threefield.indefinite import sigma_pair_bqf
from threefield.partitions import (
    ColoredPartitionCount,
    colored_partition_counts,
    colored_partition_table,
    rho_partition_series,
    sigma_hypergeometric,
    unsigned_partition_series,
)


def test_worked_example_seven():
    c = colored_partition_counts(7)
    assert (c.r_e, c.r_o, c.r) == (37, 38, -1)


def test_small_cases():
    assert colored_partition_counts(0).to_json_dict() == {"n": 0, "r_e": 1, "r_o": 0, "r": 1}
    c = colored_partition_counts(2)
    assert (c.r_e, c.r_o, c.r) == (3, 2, 1)


def test_dp_against_enumeration():
    for n, c in enumerate(colored_partition_table(22)):
        assert (c.r_e, c.r_o) == colored_partitions_brute(n), n


def test_counts_validate():
    with pytest.raises(ValueError):
        ColoredPartitionCount(3, -1, 0)
    with pytest.raises(ValueError):
        colored_partition_counts(-1)


def test_product_expansion():
    assert rho_partition_series(7).to_list() == [1, 3, 1, -2, 2, 1, -4, -1]


def test_dp_equals_product_to_2000():
    table = colored_partition_table(2000)
    rho = rho_partition_series(2000).to_list()
    assert [c.r for c in table] == rho


def test_parity_bookkeeping():
    table = colored_partition_table(300)
    unsigned = unsigned_partition_series(300).to_list()
    assert [c.r_e + c.r_o for c in table] == unsigned
    assert all(abs(c.r) <= c.r_e + c.r_o for c in table)


def test_unsigned_series_overflow_is_reported():
    # r_e + r_o passes 2^63 shortly after n = 300
    with pytest.raises(OverflowError):
        unsigned_partition_series(400)


def test_sigma_first_term():
    # the n = 0 summand is 1 either way; with C(n, 2) the n = 1 summand also starts at q^0
    for conv in ("n_choose_2", "n_times_n_plus_1_over_2"):
        assert sigma_hypergeometric(0, conv).to_list() == [1 if conv == "n_times_n_plus_1_over_2" else 2]


def test_sigma_known_start():
    # n=0: 1;  n=1: q - q^2 + q^3 - ...;  n=2: q^3 - q^4 + q^7 - q^8;  n=3: q^6 - q^7
    assert sigma_hypergeometric(8).to_list() == [1, 1, -1, 2, -2, 1, 0, 1, -2]


def test_exactly_one_convention_matches_bqf():
    bqf = sigma_pair_bqf(500)[0]
    assert sigma_hypergeometric(500, "n_times_n_plus_1_over_2").agrees_with(bqf)
    assert not sigma_hypergeometric(500, "n_choose_2").agrees_with(bqf)


def test_binomial_convention_collapses():
    # with exponent C(n, 2) the n = 0 and n = 1 terms are 1 and 1/(1+q), and the sum telescopes to 2
    assert sigma_hypergeometric(300, "n_choose_2").to_list() == [2] + [0] * 300


def test_unknown_convention():
    with pytest.raises(ValueError):
        sigma_hypergeometric(5, "n_squared")
