import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from application.certification_service import CHART, CertificationService, chart_row, compare_chart
from application.congruence_service import CongruenceService
from application.identity_registry import IdentityRegistry
from application.theorem_catalogue import catalogue_rows
from domain.constants import DEFAULT_N_MAX, ORDER_CEILING
from domain.diamonds import dk_series
from domain.errors import ClaimSyntaxError, OrderCeilingError
from domain.models import CheckReport, RunConfig, ScanConfig
from infrastructure.certificate_store import CertificateStore
from infrastructure.claim_parser import ClaimParser
from infrastructure.ledger import Ledger, LedgerRecord
from infrastructure.ui.components import ReportComponents

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CEILING = 3

app = typer.Typer(help="Exact checks for congruences of k-elongated partition diamonds.", no_args_is_help=True)


def _config(ctx: typer.Context) -> RunConfig:
    return ctx.obj


def _usage_error(message: str) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(EXIT_USAGE)


def _record(config: RunConfig, command: str, verified: bool, payload: dict) -> None:
    Ledger(config.ledger_path).append(LedgerRecord(command=command, verified=verified, payload=payload))


def _guard(func):
    """Maps domain exceptions onto the documented exit codes."""

    def run(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OrderCeilingError as exc:
            typer.echo(f"error: {exc}", err=True)
            raise typer.Exit(EXIT_CEILING)
        except (ClaimSyntaxError, ValidationError, KeyError, ValueError) as exc:
            raise _usage_error(str(exc))

    return run


@app.callback()
def main_options(
    ctx: typer.Context,
    order_ceiling: int = typer.Option(ORDER_CEILING, "--order-ceiling", help="Largest series order any command may allocate."),
    ledger: Optional[str] = typer.Option(None, "--ledger", help="Ledger file (default: $DIAMONDS_LEDGER or ./diamonds-ledger.jsonl)."),
    jobs: int = typer.Option(os.cpu_count() or 1, "--jobs", min=1, help="Worker processes for independent checks."),
    output_format: str = typer.Option("summary", "--format", help="summary or records."),
    verbose: bool = typer.Option(False, "--verbose", "-v"),
):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        ctx.obj = RunConfig(order_ceiling=order_ceiling, jobs=jobs, output_format=output_format, ledger_path=ledger)
    except ValidationError as exc:
        raise _usage_error(str(exc))


@app.command()
def expand(
    ctx: typer.Context,
    k: int = typer.Argument(..., min=1),
    order: int = typer.Option(..., "--order", "-N", min=1, help="Number of coefficients."),
    modulus: Optional[int] = typer.Option(None, "--modulus", "-m", min=2),
):
    """Print d_k(0), ..., d_k(N-1), optionally reduced mod m."""
    config = _config(ctx)
    if order > config.order_ceiling:
        typer.echo(f"error: {OrderCeilingError(order, config.order_ceiling)}", err=True)
        raise typer.Exit(EXIT_CEILING)
    ReportComponents.render_series(dk_series(k, order, modulus), k, modulus, config.output_format)


def _finish(config: RunConfig, command: str, labelled: list[tuple[str, CheckReport]], passed: list[bool]) -> None:
    for (label, report), ok in zip(labelled, passed):
        _record(config, command, ok, {"label": label, "report": report.model_dump(mode="json")})
    ReportComponents.render_reports(labelled, config.output_format)
    if not all(passed):
        raise typer.Exit(EXIT_FAILED)


@app.command()
def verify(
    ctx: typer.Context,
    claim: Optional[str] = typer.Argument(None, help='e.g. "d[8j+7](4n+3)=0 mod 8"'),
    tag: Optional[str] = typer.Option(None, "--tag", help="Run catalogue rows instead, e.g. 3.6 or 6.4."),
    n_max: Optional[int] = typer.Option(None, "--n-max", min=0),
    j_max: Optional[int] = typer.Option(None, "--j-max", min=0),
):
    """Check one congruence claim, or catalogue rows by tag, up to n_max and j_max."""
    config = _config(ctx)
    if (claim is None) == (tag is None):
        raise _usage_error("give exactly one of a claim or --tag")

    @_guard
    def run() -> tuple[list[tuple[str, CheckReport]], list[bool]]:
        service = CongruenceService(config)
        if claim is not None:
            parsed = ClaimParser.parse_claim(claim)
            report = service.check_claim(parsed, DEFAULT_N_MAX if n_max is None else n_max, j_max)
            return [(str(parsed), report)], [report.verified]
        rows = catalogue_rows(tag)
        if not rows:
            raise KeyError(f"no catalogue row tagged {tag!r}")
        labelled, passed = [], []
        for row in rows:
            report = service.check_claim(row.claim, row.n_max if n_max is None else n_max,
                                         row.j_max if j_max is None else j_max)
            labelled.append((f"{row.tag}: {row.claim}", report))
            passed.append(report.verified == row.expect_verified)
        return labelled, passed

    labelled, passed = run()
    _finish(config, "verify", labelled, passed)


@app.command()
def refine(
    ctx: typer.Context,
    k_max: int = typer.Option(6, "--k-max", min=1),
    n_ceiling: int = typer.Option(6000, "--n-ceiling", min=1),
):
    """d_2(n) = 0 mod 3^(floor(k/2)+1) for every n <= n_ceiling with 8n = 1 mod 3^k."""
    config = _config(ctx)
    report = _guard(CongruenceService(config).check_ternary_refinement)(k_max, n_ceiling)
    subs = report.sub_reports
    _finish(config, "refine", [(str(sub.claim), sub) for sub in subs], [sub.verified for sub in subs])


@app.command()
def extend(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    m_exp: int = typer.Option(..., "--m-exp", min=1),
    n_exp: int = typer.Option(..., "--n-exp", min=1),
    k: int = typer.Option(..., "--k", min=1),
    r: int = typer.Option(..., "--r", min=1),
    j_max: int = typer.Option(3, "--j-max", min=0),
    n_max: int = typer.Option(DEFAULT_N_MAX, "--n-max", min=0),
):
    """Lift d_k(p^M n + r) = 0 mod p^N to the family k' = p^(M+N-1) j + k."""
    config = _config(ctx)
    report = _guard(CongruenceService(config).check_extension_theorem)(p, m_exp, n_exp, k, r, j_max, n_max)
    _finish(config, "extend", [(str(report.claim), report)], [report.verified])


@app.command()
def identities(
    ctx: typer.Context,
    pattern: Optional[str] = typer.Argument(None, help='Glob over identity ids, e.g. "eq-6.2*".'),
    order: Optional[int] = typer.Option(None, "--order", "-N", min=2),
    list_only: bool = typer.Option(False, "--list", help="List the registry without verifying."),
    export: Optional[Path] = typer.Option(None, "--export", help="Write the registry as JSON lines."),
    readings: bool = typer.Option(False, "--readings", help="Compare the readings of the separated d_{16j+15}(4n+3) display."),
):
    """Verify registered identities (all, or those matching a glob)."""
    config = _config(ctx)
    registry = IdentityRegistry()
    if readings:
        rows = [
            (j, reading.value, mismatch)
            for j in (0, 1)
            for reading, mismatch in registry.compare_separated_readings(j, order or 100)
        ]
        agreeing = all(mismatch is None for _, _, mismatch in rows)
        _record(config, "identities", agreeing, {"readings": [list(row) for row in rows]})
        ReportComponents.render_readings(rows, config.output_format)
        return

    records = registry.records(pattern)
    if not records:
        raise _usage_error(f"no identity matches {pattern!r}")

    if export is not None:
        chosen = {r.id for r in records}
        with export.open("w", encoding="utf-8") as handle:
            for entry in registry.export():
                if entry["id"] in chosen:
                    handle.write(json.dumps(entry, sort_keys=True) + "\n")
    if list_only:
        ReportComponents.render_registry([(r.id, r.location, r.modulus) for r in records], config.output_format)
        return

    if order is not None and order > config.order_ceiling:
        typer.echo(f"error: {OrderCeilingError(order, config.order_ceiling)}", err=True)
        raise typer.Exit(EXIT_CEILING)
    checks = [registry.verify_record(record, order) for record in records]
    for check in checks:
        _record(config, "identities", check.verified, check.model_dump(mode="json"))
    ReportComponents.render_identity_checks(checks, config.output_format)
    if not all(c.as_expected() for c in checks):
        raise typer.Exit(EXIT_FAILED)


@app.command()
def certify(
    ctx: typer.Context,
    target: str = typer.Argument(..., help='Chart tag such as "6.9", or a tuple "(m,M,N,t,(r...))".'),
    r_prime: Optional[str] = typer.Option(None, "--r-prime", help="r' vector for a custom tuple."),
    k: Optional[int] = typer.Option(None, "--k", min=1, help="Diamond index for a custom tuple."),
    u: Optional[int] = typer.Option(None, "--u", min=2, help="Modulus for a custom tuple."),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Certificate file to write."),
):
    """Run the finite Radu certification for a chart row or a custom tuple."""
    config = _config(ctx)
    service = CertificationService(config)

    @_guard
    def run():
        if not target.lstrip().startswith("("):
            row = chart_row(target)
            ReportComponents.render_chart([compare_chart(row)], config.output_format)
            return service.certify_chart(target)
        if r_prime is None or k is None or u is None:
            raise ValueError("a custom tuple needs --r-prime, --k and --u")
        tuple_ = ClaimParser.parse_radu_tuple(target, r_prime)
        claim = ClaimParser.parse_claim(f"d[{k}]({tuple_.m}n+{tuple_.t})=0 mod {u}")
        return service.certify(tuple_, tuple_.r, claim, u)

    certificate = run()
    if output is not None:
        CertificateStore.write(certificate, str(output))
    _record(config, "certify", certificate.verified, certificate.model_dump(mode="json"))
    ReportComponents.render_certificate(certificate, config.output_format)
    if certificate.failed_stage == "coset_reps":
        typer.echo(f"error: unsupported level N={certificate.tuple.N}; neither N nor N/2 is square-free", err=True)
    if not certificate.verified:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def revalidate(ctx: typer.Context, path: Path = typer.Argument(..., exists=True, dir_okay=False)):
    """Recompute a written certificate and report every field that no longer matches."""
    config = _config(ctx)
    certificate = _guard(CertificateStore.read)(str(path))
    mismatches = CertificationService(config).revalidate(certificate)
    ok = certificate.verified and not mismatches
    _record(config, "revalidate", ok, {"path": str(path), "mismatches": mismatches})
    if config.output_format == "records":
        typer.echo(json.dumps({"path": str(path), "verified": certificate.verified, "mismatches": mismatches}))
    elif mismatches:
        typer.echo(f"{path}: fields differ on recomputation: {', '.join(mismatches)}")
    else:
        typer.echo(f"{path}: certificate reproduces exactly (verified={certificate.verified})")
    if not ok:
        raise typer.Exit(EXIT_FAILED)


@app.command()
def scan(ctx: typer.Context, config_path: Path = typer.Argument(..., exists=True, dir_okay=False)):
    """Check every claim of a JSON scan file (explicit claims and a cartesian sweep)."""
    config = _config(ctx)

    @_guard
    def run() -> tuple[list[tuple[str, CheckReport]], list[bool]]:
        scan_config = ScanConfig.model_validate_json(config_path.read_text(encoding="utf-8"))
        service = CongruenceService(config)
        labelled = []
        for text in scan_config.claim_texts():
            parsed = ClaimParser.parse_claim(text)
            labelled.append((str(parsed), service.check_claim(parsed, scan_config.n_max, scan_config.j_max)))
        return labelled, [report.verified for _, report in labelled]

    labelled, passed = run()
    _finish(config, "scan", labelled, passed)


@app.command()
def catalogue(
    ctx: typer.Context,
    tag: Optional[str] = typer.Argument(None),
    chart: bool = typer.Option(False, "--chart", help="Compare the tabulated Radu tuples instead."),
):
    """List the built-in theorem rows, or compare the Radu chart against recomputation."""
    config = _config(ctx)
    if chart:
        rows = [CHART[t] for t in CHART if tag is None or t.rstrip("abc") == tag or t == tag]
        comparisons = [compare_chart(row) for row in rows]
        ReportComponents.render_chart(comparisons, config.output_format)
        if any(c.p_set_match == "mismatch" or not c.nu_matches for c in comparisons):
            raise typer.Exit(EXIT_FAILED)
        return
    rows = catalogue_rows(tag)
    if not rows:
        raise _usage_error(f"no catalogue row tagged {tag!r}")
    ReportComponents.render_catalogue(rows, config.output_format)
