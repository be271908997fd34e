import pytest

from domain.errors import ClaimSyntaxError
from domain.models import CongruenceClaim, RaduTuple
from infrastructure.claim_parser import ClaimParser


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"text": "d[2](81n+44)=0 mod 81",
                      "expected": dict(k_step=0, k_base=2, A=81, B=44, modulus=81)}, id="single_index"),
        pytest.param({"text": "d[8j+7](4n+3) == 0 mod 8",
                      "expected": dict(k_step=8, k_base=7, A=4, B=3, modulus=8)}, id="family_with_double_equals"),
        pytest.param({"text": " d [ j ] ( 2n + 1 ) = 0 mod 2 ",
                      "expected": dict(k_step=1, k_base=0, A=2, B=1, modulus=2)}, id="spaces_and_bare_j"),
        pytest.param({"text": "d[3](n)=0 mod 2",
                      "expected": dict(k_step=0, k_base=3, A=1, B=0, modulus=2)}, id="bare_n"),
    ],
)
def test_parse_claim(test_case):
    assert ClaimParser.parse_claim(test_case["text"]) == CongruenceClaim(**test_case["expected"])


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"text": "x[2](81n+44)=0 mod 81", "column": 0}, id="missing_d"),
        pytest.param({"text": "d[0](2n+1)=0 mod 2", "column": 2}, id="k_zero"),
        pytest.param({"text": "d[2](81n+81)=0 mod 81", "column": 5}, id="offset_not_below_step"),
        pytest.param({"text": "d[2](44)=0 mod 81", "column": 7}, id="missing_n"),
        pytest.param({"text": "d[2](81n+44)=1 mod 81", "column": 13}, id="nonzero_right_side"),
        pytest.param({"text": "d[2](81n+44)=0 mod 81 extra", "column": 22}, id="trailing_input"),
    ],
)
def test_parse_claim_errors_carry_columns(test_case):
    with pytest.raises(ClaimSyntaxError) as info:
        ClaimParser.parse_claim(test_case["text"])
    assert info.value.column == test_case["column"]
    assert info.value.text == test_case["text"]


def test_modulus_below_two_is_refused():
    with pytest.raises(ClaimSyntaxError):
        ClaimParser.parse_claim("d[2](81n+44)=0 mod 1")


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"text": "8j+7", "expected": (8, 7)}, id="family"),
        pytest.param({"text": "2", "expected": (0, 2)}, id="constant"),
        pytest.param({"text": "j", "expected": (1, 0)}, id="bare_j"),
        pytest.param({"text": "64j", "expected": (64, 0)}, id="no_offset"),
    ],
)
def test_parse_k_expression(test_case):
    assert ClaimParser.parse_k_expression(test_case["text"]) == test_case["expected"]


def test_parse_progression():
    assert ClaimParser.parse_progression("81n+44") == (81, 44)
    assert ClaimParser.parse_progression("n") == (1, 0)
    with pytest.raises(ClaimSyntaxError):
        ClaimParser.parse_progression("5")


def test_parse_vector():
    assert ClaimParser.parse_vector("(21, 1, -5, 0)") == (21, 1, -5, 0)
    with pytest.raises(ClaimSyntaxError):
        ClaimParser.parse_vector("(1,,2)")


def test_parse_radu_tuple():
    parsed = ClaimParser.parse_radu_tuple("(125,10,10,23,(21,1,-5,0))", "(18,0,0,0)")
    assert parsed == RaduTuple.from_chart(125, 10, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0))


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"text": "(50,10,10,23,(21,1,-5,0))", "r_prime": "(18,0,0,0)"}, id="even_m"),
        pytest.param({"text": "(125,10,10,23,(21,1,-5))", "r_prime": "(18,0,0,0)"}, id="short_vector"),
        pytest.param({"text": "(125,10,10,23)", "r_prime": "(18,0,0,0)"}, id="missing_r"),
    ],
)
def test_parse_radu_tuple_errors(test_case):
    with pytest.raises(ClaimSyntaxError):
        ClaimParser.parse_radu_tuple(test_case["text"], test_case["r_prime"])
