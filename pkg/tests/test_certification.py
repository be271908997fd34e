import pytest

from application.certification_service import CHART, CertificationService, chart_row, compare_chart
from domain.models import CongruenceClaim, EtaQuotient, RaduTuple, RunConfig
from infrastructure.certificate_store import CertificateStore

SERVICE = CertificationService()


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"tag": "6.1", "checks": 3}, id="d1_mod_5"),
        pytest.param({"tag": "6.2", "checks": 52}, id="d1_mod_25"),
        pytest.param({"tag": "6.9", "checks": 32}, id="d4_mod_11"),
    ],
)
def test_chart_rows_certify(test_case):
    cert = SERVICE.certify_chart(test_case["tag"])
    assert cert.verified
    assert cert.failed_stage is None
    assert cert.kappa == 24
    assert len(cert.finite_checks) == test_case["checks"]
    assert len(cert.finite_checks) == len(cert.p_t_set) * (cert.nu_floor + 1)
    assert cert.precondition_passed
    assert cert.rep_count == 4


@pytest.mark.slow
@pytest.mark.parametrize("tag", sorted(CHART))
def test_every_chart_preset_certifies(tag):
    cert = SERVICE.certify_chart(tag)
    assert cert.verified, cert.failed_stage
    assert cert.nu_floor == CHART[tag].printed_nu_floor
    assert len(cert.finite_checks) == len(cert.p_t_set) * (cert.nu_floor + 1)
    assert SERVICE.revalidate(cert) == []


@pytest.mark.parametrize("tag", sorted(CHART))
def test_chart_values_match_computation(tag):
    comparison = compare_chart(CHART[tag])
    assert comparison.nu_matches
    assert comparison.p_set_match in ("exact", "subset")


def test_d6_chart_rows_print_half_the_orbit():
    assert compare_chart(CHART["6.14a"]).p_set_match == "exact"
    for tag in ("6.14b", "6.14c"):
        comparison = compare_chart(CHART[tag])
        assert comparison.p_set_match == "subset"
        assert comparison.computed_p_set == [52, 69, 137, 171, 188, 222, 239, 273]
    assert not compare_chart(CHART["6.14c"]).t_matches_print


def test_chart_row_lookup():
    assert chart_row("6.4").tag == "6.4a"
    assert chart_row("6.4b").tag == "6.4b"
    with pytest.raises(KeyError):
        chart_row("9.9")


@pytest.mark.parametrize(
    "test_case",
    [
        pytest.param({"tuple": RaduTuple.from_chart(125, 10, 10, 24, (21, 1, -5, 0), (18, 0, 0, 0)),
                      "claim": dict(k_base=1, A=125, B=24, modulus=25), "u": 25, "stage": "delta_star"},
                     id="tampered_t"),
        pytest.param({"tuple": RaduTuple.from_chart(25, 10, 8, 23, (1, 1, -1, 0), (4, 0, 0, 0)),
                      "claim": dict(k_base=1, A=25, B=23, modulus=5), "u": 5, "stage": "coset_reps"},
                     id="level_8"),
        pytest.param({"tuple": RaduTuple.from_chart(125, 10, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0)),
                      "claim": dict(k_base=1, A=125, B=24, modulus=25), "u": 25, "stage": "claim"},
                     id="progression_outside_orbit"),
        pytest.param({"tuple": RaduTuple.from_chart(125, 10, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0)),
                      "claim": dict(k_base=2, A=125, B=23, modulus=25), "u": 25, "stage": "precondition"},
                     id="wrong_k"),
    ],
)
def test_certification_stops_at_failing_stage(test_case):
    tuple_ = test_case["tuple"]
    cert = SERVICE.certify(tuple_, tuple_.r, CongruenceClaim(**test_case["claim"]), test_case["u"])
    assert not cert.verified
    assert cert.failed_stage == test_case["stage"]


def test_eta_must_match_the_tuple():
    row = chart_row("6.2")
    other = EtaQuotient(exponents={1: 20, 2: 1, 5: -5})
    cert = SERVICE.certify(row.tuple, other, row.claim(), row.u)
    assert cert.failed_stage == "structure"


def test_order_ceiling_stops_at_nu():
    cert = CertificationService(RunConfig(order_ceiling=100)).certify_chart("6.2")
    assert cert.failed_stage == "nu"
    assert cert.nu_floor == 25


def test_revalidate_clean_certificate():
    cert = SERVICE.certify_chart("6.1")
    assert SERVICE.revalidate(cert) == []


def test_revalidate_names_tampered_fields():
    cert = SERVICE.certify_chart("6.1").model_copy(update={"nu_floor": 7, "rep_count": 2})
    assert sorted(SERVICE.revalidate(cert)) == ["nu_floor", "rep_count"]


def test_revalidate_reevaluates_stored_finite_checks():
    cert = SERVICE.certify_chart("6.1")
    dropped = cert.model_copy(update={"finite_checks": cert.finite_checks[:-1]})
    assert SERVICE.revalidate(dropped) == ["finite_checks"]

    first = cert.finite_checks[0].model_copy(update={"residue": 1})
    altered = cert.model_copy(update={"finite_checks": [first, *cert.finite_checks[1:]]})
    assert SERVICE.revalidate(altered) == ["finite_checks"]


def test_revalidate_recomputes_nu_from_the_tuple():
    cert = SERVICE.certify_chart("6.1")
    assert SERVICE.revalidate(cert.model_copy(update={"nu_den": cert.nu_den + 1})) == ["nu_den"]


def test_certificate_store_round_trip(tmp_path):
    cert = SERVICE.certify_chart("6.1")
    path = CertificateStore.write(cert, str(tmp_path / "certs" / "d1.json"))
    assert CertificateStore.read(str(path)) == cert


def test_certificate_store_rejects_other_schema(tmp_path):
    path = tmp_path / "old.json"
    path.write_text('{"schema_version": 0}', encoding="utf-8")
    with pytest.raises(ValueError):
        CertificateStore.read(str(path))
