import pytest

from application.identity_registry import IdentityRegistry
from domain.errors import UnknownIdentityError
from domain.expressions import IdentityRecord, eta as E, expr, term as T
from domain.models import GenFunReading

REGISTRY = IdentityRegistry()


def test_registry_lists_known_identities():
    ids = [row[0] for row in REGISTRY.list_registry()]
    assert len(REGISTRY) >= 40
    assert ids == sorted(ids)
    for id_ in ("eq-2.1", "eq-2.8", "eq-6.31", "eq-6.39", "exact-3.11-j0", "exact-4.separated-j1"):
        assert id_ in ids


def test_glob_filter():
    ids = [r.id for r in REGISTRY.records("eq-6.2*")]
    assert ids == ["eq-6.22", "eq-6.23", "eq-6.24", "eq-6.25", "eq-6.26", "eq-6.27", "eq-6.28", "eq-6.29"]
    assert [r.id for r in REGISTRY.records("eq-2.1")] == ["eq-2.1"]


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        REGISTRY.get("eq-99.1")


def test_export_carries_readable_identity():
    row = next(r for r in REGISTRY.export() if r["id"] == "eq-6.39")
    assert row["modulus"] == 25
    assert "(mod 25)" in row["identity"]


def test_duplicate_ids_are_rejected():
    record = REGISTRY.get("eq-2.1")
    with pytest.raises(ValueError):
        IdentityRegistry([record, record])


@pytest.mark.parametrize("record", REGISTRY.records(), ids=lambda r: r.id)
def test_registered_identity_meets_its_expectation(record):
    check = REGISTRY.verify_record(record, order=min(record.default_order, 60))
    assert check.as_expected(), f"{record.describe()} breaks at q^{check.first_mismatch}"
    if record.expect_verified:
        assert check.reduced_verified in (None, True)


@pytest.mark.slow
@pytest.mark.parametrize("record", REGISTRY.records(), ids=lambda r: r.id)
def test_registered_identity_at_default_order(record):
    check = REGISTRY.verify_record(record)
    assert check.order == record.default_order
    assert check.as_expected(), f"{record.describe()} breaks at q^{check.first_mismatch}"


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"id": "eq-2.5", "mismatch": 4}, id="inverse_cube_with_squared_middle_term"),
        pytest.param({"id": "eq-6.30", "mismatch": 0}, id="d2_7n_plus_1_without_q"),
        pytest.param({"id": "eq-6.p25", "mismatch": 0}, id="p25_with_minus_p23"),
    ],
)
def test_printed_form_fails_where_corrected_form_holds(test_case):
    printed = REGISTRY.verify_identity(f"{test_case['id']}-printed")
    corrected = REGISTRY.verify_identity(test_case["id"])
    assert not printed.verified and not printed.expect_verified
    assert printed.first_mismatch == test_case["mismatch"]
    assert printed.as_expected()
    assert corrected.verified
    assert REGISTRY.get(f"{test_case['id']}-printed").note


@pytest.mark.parametrize("id_", ["exact-3.14-j0", "exact-3.14-j1", "u-3.b-j0", "u-3.b-j1"])
def test_family_forms_hold_to_order_100(id_):
    check = REGISTRY.verify_identity(id_, order=100)
    assert check.verified, check.first_mismatch


def test_default_order_is_used():
    check = REGISTRY.verify_identity("eq-2.1")
    assert check.order == REGISTRY.get("eq-2.1").default_order
    assert check.verified


def test_reduced_modulus_is_checked():
    check = REGISTRY.verify_identity("u-2.a3-mod9", order=50)
    assert check.reduced_modulus == 3
    assert check.reduced_verified


def test_perturbed_identity_reports_first_mismatch():
    original = REGISTRY.get("eq-2.1")
    broken = IdentityRecord(
        id="broken-2.1",
        location="(2.1) plus q",
        lhs=original.lhs,
        rhs=expr(*original.rhs.terms, T(1, 1)),
        default_order=30,
    )
    check = IdentityRegistry([broken]).verify_identity("broken-2.1")
    assert not check.verified
    assert check.first_mismatch == 1


def test_order_below_two_is_refused():
    with pytest.raises(ValueError):
        REGISTRY.verify_identity("eq-2.1", order=1)


def test_eta_helper_builds_quotient_factors():
    factors = E(f1=3, f3=-1)
    assert [(f.delta, f.exponent) for f in factors] == [(1, 3), (3, -1)]


def test_separated_readings_against_dissection():
    outcome = dict(REGISTRY.compare_separated_readings(0, 30))
    assert outcome[GenFunReading.COMBINED] is None
    assert outcome[GenFunReading.SEPARATED_DERIVED] is None
    assert outcome[GenFunReading.SEPARATED_PRINTED] == 1
    assert outcome[GenFunReading.SEPARATED_INDEX_K] == 1
