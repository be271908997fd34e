import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from sympy import isprime

from application.theorem_catalogue import catalogue_rows
from domain.diamonds import dk_series
from domain.errors import OrderCeilingError
from domain.models import CatalogueRow, CheckFailure, CheckReport, CongruenceClaim, RunConfig

logger = logging.getLogger(__name__)


def scan_progression(k: int, A: int, B: int, modulus: int, n_max: int) -> Optional[tuple[int, int]]:
    """First (n, residue) with d_k(An+B) nonzero mod modulus, n <= n_max."""
    series = dk_series(k, A * n_max + B + 1, modulus)
    values = series.coeffs[B::A][: n_max + 1]
    for n, value in enumerate(values):
        if value:
            return n, int(value)
    return None


def _scan_job(args: tuple[int, int, CongruenceClaim, int]) -> tuple[int, Optional[tuple[int, int]]]:
    j, k, claim, n_max = args
    return j, scan_progression(k, claim.A, claim.B, claim.modulus, n_max)


class CongruenceService:
    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()

    def _ensure_order(self, order: int) -> None:
        if order > self.config.order_ceiling:
            raise OrderCeilingError(order, self.config.order_ceiling)

    def check_claim(self, claim: CongruenceClaim, n_max: int, j_max: Optional[int] = None) -> CheckReport:
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        j_max = self.config.j_max if j_max is None else j_max
        if j_max < 0:
            raise ValueError("j_max must be >= 0")
        self._ensure_order(claim.A * n_max + claim.B + 1)

        sampled = [0] if claim.k_step == 0 else list(range(j_max + 1))
        # d_0 is 1/f_1, which the claims never speak about
        jobs = [(j, claim.k_for(j), claim, n_max) for j in sampled if claim.k_for(j) >= 1]
        logger.info("checking %s for j in %s, n <= %d", claim, sampled, n_max)

        if self.config.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
                results = list(pool.map(_scan_job, jobs))
        else:
            results = [_scan_job(job) for job in jobs]

        failure = None
        for j, hit in sorted(results, key=lambda item: item[0]):
            if hit is not None:
                failure = CheckFailure(j=j, n=hit[0], residue=hit[1])
                logger.debug("%s fails at j=%d n=%d", claim, j, hit[0])
                break

        return CheckReport(
            claim=claim,
            n_max=n_max,
            j_max=0 if claim.k_step == 0 else j_max,
            sampled_j=[job[0] for job in jobs],
            verified=failure is None,
            first_failure=failure,
        )

    def check_ternary_refinement(self, k_max: int, n_ceiling: int) -> CheckReport:
        """d_2(n) = 0 mod 3^(floor(k/2)+1) whenever 8n = 1 mod 3^k, for every k <= k_max."""
        if k_max < 1:
            raise ValueError("k_max must be >= 1")
        self._ensure_order(n_ceiling + 1)
        series = dk_series(2, n_ceiling + 1, 3 ** (k_max // 2 + 1))

        sub_reports = []
        for k in range(1, k_max + 1):
            A = 3 ** k
            B = pow(8, -1, A)
            target = 3 ** (k // 2 + 1)
            claim = CongruenceClaim(k_base=2, A=A, B=B, modulus=target)
            if B > n_ceiling:
                logger.info("no n <= %d satisfies 8n = 1 mod %d", n_ceiling, A)
                continue
            failure = None
            n_max = (n_ceiling - B) // A
            for n in range(n_max + 1):
                residue = int(series[A * n + B]) % target
                if residue:
                    failure = CheckFailure(j=0, n=n, residue=residue)
                    break
            sub_reports.append(
                CheckReport(claim=claim, n_max=n_max, j_max=0, sampled_j=[0],
                            verified=failure is None, first_failure=failure)
            )

        failed = next((r for r in sub_reports if not r.verified), None)
        top_claim = CongruenceClaim(k_base=2, A=3 ** k_max, B=pow(8, -1, 3 ** k_max),
                                    modulus=3 ** (k_max // 2 + 1))
        return CheckReport(
            claim=failed.claim if failed else top_claim,
            n_max=n_ceiling,
            j_max=0,
            sampled_j=[0],
            verified=failed is None,
            first_failure=failed.first_failure if failed else None,
            sub_reports=sub_reports,
        )

    def check_extension_theorem(self, p: int, M_exp: int, N_exp: int, k: int, r: int,
                                j_max: int, n_max: int) -> CheckReport:
        """Lifts d_k(p^M n + r) = 0 mod p^N to k' = p^(M+N-1) j + k."""
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if M_exp < 1 or N_exp < 1 or k < 1:
            raise ValueError("M, N and k must be positive")
        A = p ** M_exp
        if not 1 <= r <= A - 1:
            raise ValueError(f"r must lie in [1, {A - 1}]")

        hypothesis = CongruenceClaim(k_base=k, A=A, B=r, modulus=p ** N_exp)
        conclusion = CongruenceClaim(k_base=k, k_step=p ** (M_exp + N_exp - 1), A=A, B=r, modulus=p ** N_exp)
        hyp_report = self.check_claim(hypothesis, n_max)
        if not hyp_report.verified:
            logger.info("hypothesis %s fails; conclusion not attempted", hypothesis)
            return CheckReport(
                claim=conclusion, n_max=n_max, j_max=j_max, verified=False,
                first_failure=hyp_report.first_failure, failed_stage="hypothesis",
                sub_reports=[hyp_report],
            )

        conc_report = self.check_claim(conclusion, n_max, j_max)
        return CheckReport(
            claim=conclusion,
            n_max=n_max,
            j_max=j_max,
            sampled_j=conc_report.sampled_j,
            verified=conc_report.verified,
            first_failure=conc_report.first_failure,
            failed_stage=None if conc_report.verified else "conclusion",
            sub_reports=[hyp_report, conc_report],
        )

    def run_catalogue(self, prefix: Optional[str] = None,
                      n_max: Optional[int] = None) -> list[tuple[CatalogueRow, CheckReport]]:
        rows = catalogue_rows(prefix)
        if not rows:
            raise KeyError(f"no catalogue row matches {prefix!r}")
        results = []
        for row in rows:
            report = self.check_claim(row.claim, row.n_max if n_max is None else n_max, row.j_max)
            if report.verified != row.expect_verified:
                logger.warning("catalogue row %s: expected verified=%s", row.tag, row.expect_verified)
            results.append((row, report))
        return results
