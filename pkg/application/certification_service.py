import logging
from typing import Optional

from domain.diamonds import dk_series
from domain.errors import UnsupportedLevelError
from domain.models import (
    Certificate,
    ChartComparison,
    ChartRow,
    CongruenceClaim,
    EtaQuotient,
    FiniteCheck,
    RaduTuple,
    RunConfig,
    SlackEntry,
)
from domain.qproducts import eta_quotient
from domain.radu import coset_reps, delta_star_check, kappa, nu_bound, p_set, slack
from domain.series import first_mismatch

logger = logging.getLogger(__name__)


def _chart(tag: str, m: int, level: int, t: int, r: tuple[int, ...], r_prime: tuple[int, ...],
           k: int, u: int, printed_p_set: list[int], nu_floor: int,
           printed_t: Optional[int] = None, printed: bool = True) -> ChartRow:
    return ChartRow(
        tag=tag,
        tuple=RaduTuple.from_chart(m, level, level, t, r, r_prime),
        k=k,
        u=u,
        printed_p_set=printed_p_set,
        printed_nu_floor=nu_floor,
        printed_t=t if printed_t is None else printed_t,
        printed=printed,
    )


CHART: dict[str, ChartRow] = {
    row.tag: row
    for row in [
        _chart("6.1", 25, 10, 23, (1, 1, -1, 0), (4, 0, 0, 0), 1, 5, [23], 2, printed=False),
        _chart("6.2", 125, 10, 23, (21, 1, -5, 0), (18, 0, 0, 0), 1, 25, [23, 123], 25),
        _chart("6.3", 125, 10, 97, (3, 2, -2, 0), (30, 0, 0, 0), 2, 5, [97, 122], 22),
        _chart("6.4a", 49, 14, 45, (3, 1, -1, 0), (4, 0, 0, 0), 1, 7, [45], 5),
        _chart("6.4b", 49, 14, 17, (3, 1, -1, 0), (4, 0, 0, 0), 1, 7, [17, 31, 38], 6),
        _chart("6.6", 49, 14, 41, (4, 3, -2, 0), (9, 0, 0, 0), 3, 7, [41], 12),
        _chart("6.7", 343, 14, 90, (39, 3, -7, 0), (60, 0, 0, 0), 3, 49, [90, 188, 237], 92),
        _chart("6.8", 343, 14, 39, (1, 4, -2, 0), (77, 0, 0, 0), 4, 7, [39, 235, 284], 76),
        _chart("6.9", 121, 22, 96, (9, 4, -2, 0), (11, 0, 0, 0), 4, 11, [96], 31),
        _chart("6.10", 121, 22, 91, (6, 5, -2, 0), (14, 0, 0, 0), 5, 11, [91], 33),
        _chart("6.11", 121, 22, 81, (0, 7, -2, 0), (19, 0, 0, 0), 7, 11, [81], 34),
        _chart("6.14a", 289, 34, 205, (15, 6, -2, 0), (16, 0, 0, 0), 6, 17, [205], 77),
        _chart("6.14b", 289, 34, 52, (15, 6, -2, 0), (16, 0, 0, 0), 6, 17, [52, 69, 137, 171], 77),
        # printed with t = 52; the residue set only contains 188
        _chart("6.14c", 289, 34, 188, (15, 6, -2, 0), (16, 0, 0, 0), 6, 17, [188, 222, 239, 273], 77,
               printed_t=52),
        _chart("6.15", 19, 38, 16, (9, 3, -1, 0), (1, 0, 0, 0), 3, 19, [16], 29),
    ]
}


def chart_row(tag: str) -> ChartRow:
    if tag in CHART:
        return CHART[tag]
    # "6.4" addresses the first sub-row
    for suffix in ("a", "b", "c"):
        if f"{tag}{suffix}" in CHART:
            return CHART[f"{tag}{suffix}"]
    raise KeyError(f"no chart row tagged {tag!r}")


def compare_chart(row: ChartRow) -> ChartComparison:
    computed = p_set(row.tuple)
    printed = sorted(row.printed_p_set)
    if computed == printed:
        match = "exact"
    elif set(printed) <= set(computed):
        match = "subset"
    else:
        match = "mismatch"
    return ChartComparison(
        tag=row.tag,
        computed_p_set=computed,
        printed_p_set=printed,
        p_set_match=match,
        computed_nu_floor=nu_bound(row.tuple)[1],
        printed_nu_floor=row.printed_nu_floor,
        t_matches_print=row.printed_t == row.tuple.t,
    )


class CertificationService:
    def __init__(self, config: Optional[RunConfig] = None):
        self.config = config or RunConfig()

    def certify(self, tuple_: RaduTuple, eta: EtaQuotient, claim: CongruenceClaim, u: int) -> Certificate:
        """Runs the Radu pipeline; a verified certificate holds for every n >= 0."""
        cert = {
            "tuple": tuple_,
            "claim": claim,
            "u": u,
            "kappa": kappa(tuple_.m),
            "p_t_set": p_set(tuple_),
        }

        def stop(stage: str) -> Certificate:
            logger.info("certification of %s stopped at stage %s", tuple_, stage)
            return Certificate(**cert, verified=False, failed_stage=stage)

        if eta.support() != tuple_.r.support() or any(
            eta.exponents[d] != tuple_.r.exponents[d] for d in eta.support()
        ):
            return stop("structure")
        if (claim.k_step != 0 or claim.A != tuple_.m or claim.modulus != u
                or claim.B not in cert["p_t_set"]):
            return stop("claim")

        try:
            reps = coset_reps(tuple_.N)
        except UnsupportedLevelError:
            return stop("coset_reps")
        cert["rep_count"] = len(reps)

        cert["conditions"] = delta_star_check(tuple_)
        if not cert["conditions"].all_hold():
            return stop("delta_star")

        slacks = [(gamma.c, slack(tuple_, gamma)) for gamma in reps]
        cert["slacks"] = [SlackEntry(delta=c, num=s.numerator, den=s.denominator) for c, s in slacks]
        if any(s < 0 for _, s in slacks):
            return stop("slacks")

        nu, nu_floor = nu_bound(tuple_)
        cert.update(nu_num=nu.numerator, nu_den=nu.denominator, nu_floor=nu_floor)
        order = tuple_.m * (max(nu_floor, 0) + 1)
        if order > self.config.order_ceiling:
            return stop("nu")
        cert["precondition_order"] = order

        series = eta_quotient(tuple_.r, order, u)
        target = dk_series(claim.k_base, order, u)
        cert["precondition_passed"] = first_mismatch(series, target) is None
        if not cert["precondition_passed"]:
            return stop("precondition")

        checks = []
        for t_prime in cert["p_t_set"]:
            for n in range(nu_floor + 1):
                residue = series[tuple_.m * n + t_prime]
                checks.append(FiniteCheck(t_prime=t_prime, n=n, residue=residue))
                if residue:
                    cert["finite_checks"] = checks
                    return stop("finite_check")
        cert["finite_checks"] = checks
        logger.info("certified %s with floor(nu)=%d over %d checks", claim, nu_floor, len(checks))
        return Certificate(**cert, verified=True)

    def certify_chart(self, tag: str) -> Certificate:
        row = chart_row(tag)
        return self.certify(row.tuple, row.tuple.r, row.claim(), row.u)

    def revalidate(self, certificate: Certificate) -> list[str]:
        """Recomputes a certificate from its inputs and names every field that differs.

        Independently of the rerun, nu is recomputed from the stored tuple and every stored
        finite check is evaluated again against the eta quotient.
        """
        fresh = self.certify(certificate.tuple, certificate.tuple.r, certificate.claim, certificate.u)
        stored = certificate.model_dump()
        recomputed = fresh.model_dump()
        drift = [name for name in recomputed if stored[name] != recomputed[name]]
        for name in self._stored_nu_drift(certificate) + self._stored_checks_drift(certificate):
            if name not in drift:
                drift.append(name)
        return drift

    @staticmethod
    def _stored_nu_drift(certificate: Certificate) -> list[str]:
        if certificate.nu_floor is None:
            return []
        nu, nu_floor = nu_bound(certificate.tuple)
        recomputed = {"nu_num": nu.numerator, "nu_den": nu.denominator, "nu_floor": nu_floor}
        return [name for name, value in recomputed.items() if getattr(certificate, name) != value]

    def _stored_checks_drift(self, certificate: Certificate) -> list[str]:
        if not certificate.finite_checks:
            return []
        tuple_ = certificate.tuple
        stored = {(c.t_prime, c.n): c.residue for c in certificate.finite_checks}
        if certificate.verified:
            _, nu_floor = nu_bound(tuple_)
            needed = {(t, n) for t in p_set(tuple_) for n in range(nu_floor + 1)}
            if not needed <= stored.keys():
                return ["finite_checks"]
        order = max(tuple_.m * n + t for t, n in stored) + 1
        if order > self.config.order_ceiling:
            return ["finite_checks"]
        series = eta_quotient(tuple_.r, order, certificate.u)
        if any(series[tuple_.m * n + t] != residue for (t, n), residue in stored.items()):
            return ["finite_checks"]
        return []
