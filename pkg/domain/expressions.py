from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from domain.diamonds import progression
from domain.genfuns import exact_genfun
from domain.models import BinomialGenFun, EtaQuotient, RingDescriptor
from domain.qproducts import (
    borwein_a,
    eta_quotient,
    jacobi_cube,
    p_alpha_beta,
    rr_product,
    scaled,
    sparse_pochhammer,
    theta_f22_over_f1,
    theta_f25_over_f12,
)
from domain.series import TruncatedSeries, add, mul, one, power, reduce_mod, scale, shift, truncate, zero


class _Factor(BaseModel):
    model_config = ConfigDict(frozen=True)


class EtaFactor(_Factor):
    kind: Literal["eta"] = "eta"
    delta: int = Field(ge=1)
    exponent: int

    def __str__(self) -> str:
        return f"f{self.delta}^{self.exponent}"


class CubicThetaFactor(_Factor):
    kind: Literal["a"] = "a"
    scale: int = Field(default=1, ge=1)
    exponent: int = 1

    def __str__(self) -> str:
        return f"a(q^{self.scale})^{self.exponent}"


class RogersRamanujanFactor(_Factor):
    kind: Literal["R"] = "R"
    scale: int = Field(default=1, ge=1)
    exponent: int = 1

    def __str__(self) -> str:
        return f"R(q^{self.scale})^{self.exponent}"


class PochhammerFactor(_Factor):
    kind: Literal["poch"] = "poch"
    start: int = Field(ge=1)
    step: int = Field(ge=1)
    exponent: int = 1

    def __str__(self) -> str:
        return f"(q^{self.start};q^{self.step})^{self.exponent}"


class PAlphaBetaFactor(_Factor):
    kind: Literal["P"] = "P"
    alpha: int = Field(ge=0)
    beta: int
    exponent: int = 1

    def __str__(self) -> str:
        return f"P[{self.alpha},{self.beta}]^{self.exponent}"


class ThetaSumFactor(_Factor):
    kind: Literal["theta"] = "theta"
    name: Literal["jacobi_cube", "triangular", "f25_over_f12"]
    scale: int = Field(default=1, ge=1)
    exponent: int = 1

    def __str__(self) -> str:
        return f"{self.name}(q^{self.scale})^{self.exponent}"


class ProgressionFactor(_Factor):
    kind: Literal["dk"] = "dk"
    k: int = Field(ge=1)
    A: int = Field(ge=1)
    B: int = Field(ge=0)

    def __str__(self) -> str:
        return f"sum d{self.k}({self.A}n+{self.B}) q^n"


class GenFunFactor(_Factor):
    kind: Literal["genfun"] = "genfun"
    spec: BinomialGenFun

    def __str__(self) -> str:
        return f"genfun[{self.spec.family.value}, j={self.spec.j}, {self.spec.reading.value}]"


Factor = Annotated[
    Union[
        EtaFactor,
        CubicThetaFactor,
        RogersRamanujanFactor,
        PochhammerFactor,
        PAlphaBetaFactor,
        ThetaSumFactor,
        ProgressionFactor,
        GenFunFactor,
    ],
    Field(discriminator="kind"),
]


class Term(BaseModel):
    model_config = ConfigDict(frozen=True)

    coefficient: int = 1
    q_power: int = Field(default=0, ge=0)
    factors: tuple[Factor, ...] = ()

    def __str__(self) -> str:
        parts = [] if self.coefficient == 1 else [str(self.coefficient)]
        if self.q_power:
            parts.append(f"q^{self.q_power}")
        parts.extend(str(f) for f in self.factors)
        return " ".join(parts) or "1"


class Expression(BaseModel):
    model_config = ConfigDict(frozen=True)

    terms: tuple[Term, ...]

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms) or "0"


def term(coefficient: int = 1, q_power: int = 0, *factors) -> Term:
    flat = []
    for f in factors:
        flat.extend(f if isinstance(f, tuple) else (f,))
    return Term(coefficient=coefficient, q_power=q_power, factors=tuple(flat))


def eta(**exponents: int) -> tuple[EtaFactor, ...]:
    """eta(f1=3, f3=-1) -> the factors of f1^3 / f3."""
    return tuple(EtaFactor(delta=int(name[1:]), exponent=e) for name, e in exponents.items())


def expr(*terms: Term) -> Expression:
    return Expression(terms=tuple(terms))


class Evaluator:
    """Evaluates expressions to a fixed order in one ring, caching factor series."""

    def __init__(self, order: int, modulus: Optional[int] = None):
        self.order = order
        self.modulus = modulus
        self.ring = RingDescriptor.integers() if modulus is None else RingDescriptor.residues(modulus)
        self._cache: dict[tuple, TruncatedSeries] = {}

    def _to_ring(self, series: TruncatedSeries) -> TruncatedSeries:
        return series if self.modulus is None else reduce_mod(series, self.modulus)

    def _base(self, factor, order: int) -> TruncatedSeries:
        if isinstance(factor, CubicThetaFactor):
            return scaled(borwein_a, factor.scale, order)
        if isinstance(factor, RogersRamanujanFactor):
            return scaled(rr_product, factor.scale, order)
        if isinstance(factor, PochhammerFactor):
            return sparse_pochhammer(factor.start, factor.step, order)
        if isinstance(factor, PAlphaBetaFactor):
            return p_alpha_beta(factor.alpha, factor.beta, order)
        if isinstance(factor, ThetaSumFactor):
            builder = {
                "jacobi_cube": jacobi_cube,
                "triangular": theta_f22_over_f1,
                "f25_over_f12": theta_f25_over_f12,
            }[factor.name]
            return scaled(builder, factor.scale, order)
        if isinstance(factor, ProgressionFactor):
            return progression(factor.k, factor.A, factor.B, order, self.modulus)
        if isinstance(factor, GenFunFactor):
            return exact_genfun(factor.spec, order)
        raise TypeError(f"unsupported factor {factor!r}")

    def factor_series(self, factor, order: int) -> TruncatedSeries:
        key = (factor, order)
        if key not in self._cache:
            series = self._to_ring(self._base(factor, order))
            exponent = getattr(factor, "exponent", 1)
            self._cache[key] = series if exponent == 1 else power(series, exponent)
        return self._cache[key]

    def term_series(self, t: Term) -> Optional[TruncatedSeries]:
        order = self.order - t.q_power
        if order < 1:
            return None
        etas: dict[int, int] = {}
        result = one(self.ring, order)
        for factor in t.factors:
            if isinstance(factor, EtaFactor):
                etas[factor.delta] = etas.get(factor.delta, 0) + factor.exponent
            else:
                result = mul(result, self.factor_series(factor, order))
        if any(etas.values()):
            result = mul(result, eta_quotient(EtaQuotient(exponents=etas), order, self.modulus))
        return shift(scale(result, t.coefficient), t.q_power)

    def evaluate(self, expression: Expression) -> TruncatedSeries:
        total = zero(self.ring, self.order)
        for t in expression.terms:
            series = self.term_series(t)
            if series is not None:
                total = add(total, truncate(series, self.order))
        return total


class IdentityRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    location: str
    lhs: Expression
    rhs: Expression
    modulus: Optional[int] = Field(default=None, ge=2)
    default_order: int = Field(ge=2)
    expect_verified: bool = True
    note: str = ""

    def describe(self) -> str:
        suffix = f" (mod {self.modulus})" if self.modulus else ""
        relation = "==" if self.modulus else "="
        return f"{self.lhs} {relation} {self.rhs}{suffix}"


class IdentityCheck(BaseModel):
    id: str
    location: str
    order: int
    modulus: Optional[int] = None
    verified: bool
    first_mismatch: Optional[int] = None
    reduced_modulus: Optional[int] = None
    reduced_verified: Optional[bool] = None
    expect_verified: bool = True

    def as_expected(self) -> bool:
        return self.verified == self.expect_verified
