import random

import pytest

from domain.constants import NAIVE_ORACLE_MAX_ORDER
from domain.diamonds import dk_oracle, dk_quotient, dk_series, progression
from domain.errors import OrderCeilingError
from domain.series import reduce_mod


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"k": 1, "order": 9, "expected": [1, 4, 13, 36, 90]}, id="d1_head"),
        pytest.param({"k": 2, "order": 3, "expected": [1, 7, 33]}, id="d2_head"),
        pytest.param({"k": 5, "order": 1, "expected": [1]}, id="single_coefficient"),
    ],
)
def test_dk_series_head(test_case):
    series = dk_series(test_case["k"], test_case["order"])
    assert series.to_list()[: len(test_case["expected"])] == test_case["expected"]


def test_dk_series_d1_eight():
    assert dk_series(1, 9)[8] == 1901


def test_first_two_coefficients_follow_k():
    for k in range(1, 12):
        series = dk_series(k, 2)
        assert series[0] == 1
        assert series[1] == 3 * k + 1


def test_dk_quotient_exponents():
    assert dk_quotient(3).exponents == {1: -10, 2: 3}


def test_dk_series_rejects_k_zero():
    with pytest.raises(ValueError):
        dk_series(0, 10)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_oracle_agrees_with_fast_route(k):
    assert dk_oracle(k, 500) == dk_series(k, 500)


def test_oracle_refuses_large_orders():
    with pytest.raises(OrderCeilingError):
        dk_oracle(1, NAIVE_ORACLE_MAX_ORDER + 1)


def test_residue_route_matches_reduction():
    rng = random.Random(17)
    for _ in range(10):
        k = rng.randint(1, 12)
        modulus = rng.choice([2, 5, 7, 16, 81, 243])
        assert dk_series(k, 150, modulus) == reduce_mod(dk_series(k, 150), modulus)


def test_d2_at_43_vanishes_mod_7():
    assert dk_series(2, 44, 7)[43] == 0


def test_progression_reads_every_a_th_coefficient():
    full = dk_series(3, 40)
    part = progression(3, 4, 2, 10)
    assert part.to_list() == [full[4 * n + 2] for n in range(10)]


def test_progression_81n_plus_44_vanishes_mod_81():
    part = progression(2, 81, 44, 8, 81)
    assert part.to_list() == [0] * 8
