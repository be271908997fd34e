import pytest

from domain.models import EtaQuotient
from domain.qproducts import (
    borwein_a,
    eta_quotient,
    jacobi_cube,
    p_alpha_beta,
    pochhammer_f,
    rr_product,
    scaled,
    sparse_pochhammer,
    theta_f22_over_f1,
    theta_f25_over_f12,
)
from domain.series import add, inflate, invert, mul, one, power, reduce_mod, scale, shift, truncate

ORDER = 200


def _eta(**exponents: int):
    return eta_quotient(EtaQuotient(exponents={int(k[1:]): v for k, v in exponents.items()}), ORDER)


def test_pochhammer_f_matches_literal_product():
    assert pochhammer_f(1, 13).to_list() == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
    assert pochhammer_f(2, 31) == truncate(inflate(pochhammer_f(1, 16), 2), 31)


def test_sparse_pochhammer_of_full_step_is_euler_product():
    assert sparse_pochhammer(1, 1, 50) == pochhammer_f(1, 50)
    assert sparse_pochhammer(3, 3, 50) == pochhammer_f(3, 50)


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"exponents": {1: -1}, "expected": [1, 1, 2, 3, 5, 7, 11]}, id="partitions"),
        pytest.param({"exponents": {1: -4, 2: 1}, "expected": [1, 4, 13, 36, 90]}, id="d1_series"),
        pytest.param({"exponents": {1: 3}, "expected": [1, -3, 0, 5, 0, 0, -7]}, id="f1_cubed"),
    ],
)
def test_eta_quotient_heads(test_case):
    series = eta_quotient(EtaQuotient(exponents=test_case["exponents"]), len(test_case["expected"]))
    assert series.to_list() == test_case["expected"]


def test_eta_quotient_in_residue_ring_matches_reduction():
    eq = EtaQuotient(exponents={1: 21, 2: 1, 5: -5})
    assert eta_quotient(eq, ORDER, 25) == reduce_mod(eta_quotient(eq, ORDER), 25)


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"builder": jacobi_cube, "route": {"f1": 3}}, id="jacobi_cube"),
        pytest.param({"builder": theta_f22_over_f1, "route": {"f2": 2, "f1": -1}}, id="triangular_numbers"),
        pytest.param({"builder": theta_f25_over_f12, "route": {"f2": 5, "f1": -2}}, id="f2_5_over_f1_2"),
    ],
)
def test_theta_sums_match_products(test_case):
    assert test_case["builder"](ORDER) == _eta(**test_case["route"])


def test_theta_series_heads():
    assert jacobi_cube(7).to_list() == [1, -3, 0, 5, 0, 0, -7]
    assert theta_f22_over_f1(7).to_list() == [1, 1, 0, 1, 0, 0, 1]
    assert theta_f25_over_f12(9).to_list() == [1, 2, 0, 0, 0, -4, 0, 0, -5]


def test_borwein_a():
    a = borwein_a(ORDER)
    assert a.to_list()[:8] == [1, 6, 0, 6, 6, 0, 0, 12]
    assert reduce_mod(a, 3) == one(reduce_mod(a, 3).ring, ORDER)
    expected = add(_eta(f1=3, f3=-1), shift(scale(_eta(f9=3, f3=-1), 9), 1))
    assert a == truncate(expected, ORDER)


def test_borwein_a_cubed():
    a3 = power(borwein_a(ORDER), 3)
    expected = add(_eta(f1=9, f3=-3), truncate(shift(scale(_eta(f3=9, f1=-3), 27), 1), ORDER))
    assert a3 == expected
    assert reduce_mod(a3, 9) == one(reduce_mod(a3, 9).ring, ORDER)


def test_rr_product_head():
    assert rr_product(6).to_list() == [1, -1, 1, 0, -1, 1]


def test_f1_five_dissection_through_rogers_ramanujan():
    r5 = scaled(rr_product, 5, ORDER)
    bracket = add(invert(r5), truncate(shift(scale(one(r5.ring, ORDER), -1), 1), ORDER))
    bracket = add(bracket, truncate(shift(scale(r5, -1), 2), ORDER))
    assert mul(_eta(f25=1), bracket) == pochhammer_f(1, ORDER)


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"alpha": 0, "beta": 1, "shift": 1, "coefficient": 4, "route": {"f1": 1, "f10": 5, "f2": -1, "f5": -5}},
                     id="p_0_1"),
        pytest.param({"alpha": 1, "beta": 2, "shift": 0, "coefficient": 1, "route": {"f1": 6, "f5": -6}, "plus_q": 11},
                     id="p_1_2"),
    ],
)
def test_p_alpha_beta_relations(test_case):
    route = scale(_eta(**test_case["route"]), test_case["coefficient"])
    route = truncate(shift(route, test_case["shift"]), ORDER)
    if "plus_q" in test_case:
        route = add(route, truncate(shift(scale(one(route.ring, ORDER), test_case["plus_q"]), 1), ORDER))
    assert p_alpha_beta(test_case["alpha"], test_case["beta"], ORDER) == route


def test_p_2_4_is_square_of_p_1_2_plus_2q2():
    p12 = p_alpha_beta(1, 2, ORDER)
    two_q2 = truncate(shift(scale(one(p12.ring, ORDER), 2), 2), ORDER)
    assert p_alpha_beta(2, 4, ORDER) == add(mul(p12, p12), two_q2)


def test_p_alpha_beta_rejects_negative_alpha():
    with pytest.raises(ValueError):
        p_alpha_beta(-1, 0, 10)

