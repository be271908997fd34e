from fractions import Fraction

import pytest
from pydantic import ValidationError

from domain.constants import KAPPA_COPRIME_TO_SIX
from domain.errors import UnsupportedLevelError
from domain.models import CosetRep, RaduTuple
from domain.radu import (
    coset_reps,
    delta_star_check,
    gamma0_index,
    is_supported_level,
    kappa,
    nu_bound,
    p_set,
    slack,
)

CHART_TUPLES = [
    pytest.param({"tuple": (125, 10, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0)), "p_set": [23, 123], "nu_floor": 25}, id="d1_mod_25"),
    pytest.param({"tuple": (125, 10, 10, 97, (3, 2, -2, 0), (30, 0, 0, 0)), "p_set": [97, 122], "nu_floor": 22}, id="d2_mod_5"),
    pytest.param({"tuple": (49, 14, 14, 45, (3, 1, -1, 0), (4, 0, 0, 0)), "p_set": [45], "nu_floor": 5}, id="d1_mod_7_t45"),
    pytest.param({"tuple": (49, 14, 14, 17, (3, 1, -1, 0), (4, 0, 0, 0)), "p_set": [17, 31, 38], "nu_floor": 6}, id="d1_mod_7_t17"),
    pytest.param({"tuple": (49, 14, 14, 41, (4, 3, -2, 0), (9, 0, 0, 0)), "p_set": [41], "nu_floor": 12}, id="d3_mod_7"),
    pytest.param({"tuple": (343, 14, 14, 90, (39, 3, -7, 0), (60, 0, 0, 0)), "p_set": [90, 188, 237], "nu_floor": 92}, id="d3_mod_49"),
    pytest.param({"tuple": (343, 14, 14, 39, (1, 4, -2, 0), (77, 0, 0, 0)), "p_set": [39, 235, 284], "nu_floor": 76}, id="d4_mod_7"),
    pytest.param({"tuple": (121, 22, 22, 96, (9, 4, -2, 0), (11, 0, 0, 0)), "p_set": [96], "nu_floor": 31}, id="d4_mod_11"),
    pytest.param({"tuple": (121, 22, 22, 91, (6, 5, -2, 0), (14, 0, 0, 0)), "p_set": [91], "nu_floor": 33}, id="d5_mod_11"),
    pytest.param({"tuple": (121, 22, 22, 81, (0, 7, -2, 0), (19, 0, 0, 0)), "p_set": [81], "nu_floor": 34}, id="d7_mod_11"),
    pytest.param({"tuple": (289, 34, 34, 205, (15, 6, -2, 0), (16, 0, 0, 0)), "p_set": [205], "nu_floor": 77}, id="d6_mod_17_t205"),
    pytest.param({"tuple": (19, 38, 38, 16, (9, 3, -1, 0), (1, 0, 0, 0)), "p_set": [16], "nu_floor": 29}, id="d3_mod_19"),
    pytest.param({"tuple": (25, 10, 10, 23, (1, 1, -1, 0), (4, 0, 0, 0)), "p_set": [23], "nu_floor": 2}, id="d1_mod_5"),
]


def _tuple(m, M, N, t, r, r_prime) -> RaduTuple:
    return RaduTuple.from_chart(m, M, N, t, r, r_prime)


@pytest.mark.parametrize("test_case", CHART_TUPLES)
def test_chart_tuples(test_case):
    tuple_ = _tuple(*test_case["tuple"])
    assert delta_star_check(tuple_).all_hold()
    assert p_set(tuple_) == test_case["p_set"]
    assert nu_bound(tuple_)[1] == test_case["nu_floor"]
    assert all(slack(tuple_, gamma) >= 0 for gamma in coset_reps(tuple_.N))


def test_d6_rows_share_one_residue_orbit():
    orbit = [52, 69, 137, 171, 188, 222, 239, 273]
    for t in (52, 188):
        tuple_ = _tuple(289, 34, 34, t, (15, 6, -2, 0), (16, 0, 0, 0))
        assert p_set(tuple_) == orbit


def test_t_always_belongs_to_its_orbit():
    for t in range(0, 49, 4):
        tuple_ = _tuple(49, 14, 14, t, (3, 1, -1, 0), (4, 0, 0, 0))
        assert t in p_set(tuple_)


def test_orbit_is_closed_under_the_square_action():
    tuple_ = _tuple(343, 14, 14, 90, (39, 3, -7, 0), (60, 0, 0, 0))
    orbit = p_set(tuple_)
    for t in orbit:
        again = _tuple(343, 14, 14, t, (39, 3, -7, 0), (60, 0, 0, 0))
        assert p_set(again) == orbit


def test_nu_is_exact():
    nu, floor = nu_bound(_tuple(125, 10, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0)))
    assert isinstance(nu, Fraction)
    assert floor == 25
    assert Fraction(25) <= nu < Fraction(26)


def test_tampered_t_breaks_level_condition():
    conditions = delta_star_check(_tuple(125, 10, 10, 24, (21, 1, -5, 0), (18, 0, 0, 0)))
    assert conditions.prime_support and conditions.divisor_support
    assert not conditions.level_divisibility
    assert not conditions.all_hold()


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"N": 10, "deltas": [1, 2, 5, 10]}, id="level_10"),
        pytest.param({"N": 14, "deltas": [1, 2, 7, 14]}, id="level_14"),
        pytest.param({"N": 12, "deltas": [1, 2, 3, 4, 6, 12]}, id="twice_square_free"),
    ],
)
def test_coset_reps(test_case):
    reps = coset_reps(test_case["N"])
    assert [g.c for g in reps] == test_case["deltas"]
    assert all(g.a == 1 and g.b == 0 and g.d == 1 for g in reps)


def test_coset_reps_refuse_unsupported_level():
    assert not is_supported_level(8)
    with pytest.raises(UnsupportedLevelError):
        coset_reps(8)


def test_coset_rep_needs_determinant_one():
    with pytest.raises(ValidationError):
        CosetRep(a=1, b=1, c=1, d=1)


@pytest.mark.parametrize("m", [5, 7, 11, 13, 17, 19, 23, 25, 49, 121, 125, 289, 343])
def test_kappa_for_m_coprime_to_six(m):
    assert kappa(m) == KAPPA_COPRIME_TO_SIX


@pytest.mark.parametrize("test_case", [pytest.param({"m": 3, "kappa": 8}, id="m_3"), pytest.param({"m": 9, "kappa": 8}, id="m_9")])
def test_kappa_for_multiples_of_three(test_case):
    assert kappa(test_case["m"]) == test_case["kappa"]


def test_gamma0_index():
    assert gamma0_index(10) == 18
    assert gamma0_index(38) == 60


def test_radu_tuple_rejects_even_m():
    with pytest.raises(ValidationError):
        _tuple(50, 10, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0))
