import json
from typing import Iterable, Optional

import pandas as pd
import typer

from domain.expressions import IdentityCheck
from domain.models import CatalogueRow, Certificate, ChartComparison, CheckReport
from domain.series import TruncatedSeries


def _emit_records(records: Iterable[dict]) -> None:
    for record in records:
        typer.echo(json.dumps(record, sort_keys=True))


def _emit_table(df: pd.DataFrame) -> None:
    if df.empty:
        typer.echo("(nothing to report)")
    else:
        typer.echo(df.to_string(index=False))


class ReportComponents:
    @staticmethod
    def render_series(series: TruncatedSeries, k: int, modulus: Optional[int], output_format: str) -> None:
        values = series.to_list()
        if output_format == "records":
            _emit_records({"k": k, "n": n, "value": v, "modulus": modulus} for n, v in enumerate(values))
            return
        label = f"d{k}(n)" if modulus is None else f"d{k}(n) mod {modulus}"
        _emit_table(pd.DataFrame({"n": range(len(values)), label: [str(v) for v in values]}))

    @staticmethod
    def render_reports(reports: list[tuple[str, CheckReport]], output_format: str) -> None:
        if output_format == "records":
            _emit_records({"label": label, **report.model_dump(mode="json")} for label, report in reports)
            return
        rows = []
        for label, report in reports:
            failure = report.first_failure
            rows.append({
                "claim": label,
                "j": ",".join(str(j) for j in report.sampled_j) or "-",
                "n_max": report.n_max,
                "verified": report.verified,
                "stage": report.failed_stage or "",
                "witness": f"j={failure.j} n={failure.n} residue={failure.residue}" if failure else "",
            })
        _emit_table(pd.DataFrame(rows))

    @staticmethod
    def render_catalogue(rows: list[CatalogueRow], output_format: str) -> None:
        if output_format == "records":
            _emit_records(row.model_dump(mode="json") for row in rows)
            return
        _emit_table(pd.DataFrame([
            {"tag": row.tag, "claim": str(row.claim), "n_max": row.n_max, "j_max": row.j_max,
             "expected": "holds" if row.expect_verified else "fails", "note": row.note}
            for row in rows
        ]))

    @staticmethod
    def render_identity_checks(checks: list[IdentityCheck], output_format: str) -> None:
        if output_format == "records":
            _emit_records(check.model_dump(mode="json") for check in checks)
            return
        _emit_table(pd.DataFrame([
            {"id": c.id, "location": c.location, "order": c.order, "modulus": c.modulus or "",
             "verified": c.verified, "expected": "holds" if c.expect_verified else "fails",
             "mismatch": "" if c.first_mismatch is None else c.first_mismatch,
             "reduced": "" if c.reduced_modulus is None else f"mod {c.reduced_modulus}: {c.reduced_verified}"}
            for c in checks
        ]))

    @staticmethod
    def render_registry(entries: list[tuple[str, str, Optional[int]]], output_format: str) -> None:
        if output_format == "records":
            _emit_records({"id": i, "location": loc, "modulus": mod} for i, loc, mod in entries)
            return
        _emit_table(pd.DataFrame([{"id": i, "location": loc, "modulus": mod or ""} for i, loc, mod in entries]))

    @staticmethod
    def render_certificate(certificate: Certificate, output_format: str) -> None:
        if output_format == "records":
            _emit_records([certificate.model_dump(mode="json")])
            return
        nu = "" if certificate.nu_num is None else f"{certificate.nu_num}/{certificate.nu_den}"
        summary = pd.DataFrame([{
            "tuple": str(certificate.tuple),
            "claim": str(certificate.claim),
            "P(t)": "{" + ",".join(str(t) for t in certificate.p_t_set) + "}",
            "nu": nu,
            "floor(nu)": "" if certificate.nu_floor is None else certificate.nu_floor,
            "checks": len(certificate.finite_checks),
            "verified": certificate.verified,
            "stage": certificate.failed_stage or "",
        }])
        _emit_table(summary)

    @staticmethod
    def render_chart(comparisons: list[ChartComparison], output_format: str) -> None:
        if output_format == "records":
            _emit_records(c.model_dump(mode="json") for c in comparisons)
            return
        _emit_table(pd.DataFrame([
            {"tag": c.tag,
             "P(t) computed": "{" + ",".join(map(str, c.computed_p_set)) + "}",
             "P(t) printed": "{" + ",".join(map(str, c.printed_p_set)) + "}",
             "match": c.p_set_match,
             "floor(nu)": c.computed_nu_floor,
             "printed": c.printed_nu_floor,
             "t as printed": c.t_matches_print}
            for c in comparisons
        ]))

    @staticmethod
    def render_readings(rows: list[tuple[int, str, Optional[int]]], output_format: str) -> None:
        if output_format == "records":
            _emit_records({"j": j, "reading": reading, "first_mismatch": m} for j, reading, m in rows)
            return
        _emit_table(pd.DataFrame([
            {"j": j, "reading": reading, "agrees": m is None, "mismatch": "" if m is None else m}
            for j, reading, m in rows
        ]))
