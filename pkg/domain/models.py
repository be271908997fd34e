from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import divisors

from domain.constants import DEFAULT_J_MAX, DEFAULT_N_MAX, ORDER_CEILING, SCHEMA_VERSION


class RingDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["integers", "residues"]
    modulus: Optional[int] = None

    @model_validator(mode="after")
    def modulus_matches_kind(self) -> "RingDescriptor":
        if self.kind == "residues" and (self.modulus is None or self.modulus < 2):
            raise ValueError("residue rings need a modulus >= 2")
        if self.kind == "integers" and self.modulus is not None:
            raise ValueError("the integer ring carries no modulus")
        return self

    @classmethod
    def integers(cls) -> "RingDescriptor":
        return cls(kind="integers")

    @classmethod
    def residues(cls, modulus: int) -> "RingDescriptor":
        return cls(kind="residues", modulus=modulus)

    @property
    def is_residues(self) -> bool:
        return self.kind == "residues"

    def __str__(self) -> str:
        return "Z" if self.kind == "integers" else f"Z/{self.modulus}Z"


class EtaQuotient(BaseModel):
    """Exponent map delta -> r_delta standing for prod f_delta^r_delta."""

    model_config = ConfigDict(frozen=True)

    exponents: dict[int, int]

    @field_validator("exponents")
    @classmethod
    def positive_nonempty(cls, v: dict[int, int]) -> dict[int, int]:
        if not v:
            raise ValueError("an eta quotient needs at least one factor")
        if any(delta < 1 for delta in v):
            raise ValueError("eta quotient indices must be >= 1")
        return dict(sorted(v.items()))

    @classmethod
    def from_vector(cls, level: int, vector: list[int] | tuple[int, ...]) -> "EtaQuotient":
        """Aligns a chart vector with the divisors of level in increasing order."""
        divs = divisors(level)
        if len(vector) != len(divs):
            raise ValueError(
                f"level {level} has {len(divs)} divisors but {len(vector)} exponents were given"
            )
        return cls(exponents={int(d): int(r) for d, r in zip(divs, vector)})

    def vector(self, level: int) -> list[int]:
        return [self.exponents.get(int(d), 0) for d in divisors(level)]

    def support(self) -> list[int]:
        return [delta for delta, r in self.exponents.items() if r != 0]

    def __hash__(self) -> int:
        return hash(tuple(self.exponents.items()))

    def __str__(self) -> str:
        num = [f"f{d}" + (f"^{r}" if r != 1 else "") for d, r in self.exponents.items() if r > 0]
        den = [f"f{d}" + (f"^{-r}" if r != -1 else "") for d, r in self.exponents.items() if r < 0]
        text = " ".join(num) or "1"
        if den:
            text += " / " + (den[0] if len(den) == 1 else "(" + " ".join(den) + ")")
        return text


class CongruenceClaim(BaseModel):
    """d_{k_step j + k_base}(A n + B) = 0 (mod modulus) for j >= 0 and n >= 0."""

    model_config = ConfigDict(frozen=True)

    k_base: int = Field(ge=0)
    k_step: int = Field(default=0, ge=0)
    A: int = Field(gt=0)
    B: int = Field(ge=0)
    modulus: int = Field(ge=2)

    @model_validator(mode="after")
    def check_progression(self) -> "CongruenceClaim":
        if self.B >= self.A:
            raise ValueError("progression offset B must satisfy 0 <= B < A")
        if self.k_step == 0 and self.k_base < 1:
            raise ValueError("a single-index claim needs k_base >= 1")
        return self

    def k_for(self, j: int) -> int:
        return self.k_step * j + self.k_base

    def k_expression(self) -> str:
        if self.k_step == 0:
            return str(self.k_base)
        step = "" if self.k_step == 1 else str(self.k_step)
        return f"{step}j+{self.k_base}" if self.k_base else f"{step}j"

    def __str__(self) -> str:
        a = "" if self.A == 1 else str(self.A)
        return f"d[{self.k_expression()}]({a}n+{self.B})=0 mod {self.modulus}"


class CheckFailure(BaseModel):
    j: int
    n: int
    residue: int


class CheckReport(BaseModel):
    claim: CongruenceClaim
    n_max: int
    j_max: int
    sampled_j: list[int] = Field(default_factory=list)
    verified: bool
    first_failure: Optional[CheckFailure] = None
    failed_stage: Optional[Literal["hypothesis", "conclusion"]] = None
    sub_reports: list["CheckReport"] = Field(default_factory=list)

    @model_validator(mode="after")
    def verified_iff_no_failure(self) -> "CheckReport":
        if self.verified != (self.first_failure is None):
            raise ValueError("verified must hold exactly when no failure is recorded")
        return self


class GenFunFamily(str, Enum):
    D4J3_4N2 = "D4J3_4N2"
    D4J3_4N3 = "D4J3_4N3"
    D8J7_4N2 = "D8J7_4N2"
    D8J7_4N3 = "D8J7_4N3"
    D16J15_4N3 = "D16J15_4N3"


class GenFunReading(str, Enum):
    COMBINED = "combined"
    SEPARATED_PRINTED = "separated-printed"
    SEPARATED_INDEX_K = "separated-index-k"
    SEPARATED_DERIVED = "separated-derived"


class BinomialGenFun(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: GenFunFamily
    j: int = Field(ge=0)
    reading: GenFunReading = GenFunReading.COMBINED

    @model_validator(mode="after")
    def reading_applies(self) -> "BinomialGenFun":
        if self.reading != GenFunReading.COMBINED and self.family != GenFunFamily.D16J15_4N3:
            raise ValueError("only the d_{16j+15}(4n+3) display has separated readings")
        return self


class RaduTuple(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(gt=0)
    M: int = Field(gt=0)
    N: int = Field(gt=0)
    t: int = Field(ge=0)
    r: EtaQuotient
    r_prime: EtaQuotient

    @model_validator(mode="after")
    def check_structure(self) -> "RaduTuple":
        if self.m % 2 == 0:
            raise ValueError("m must be odd")
        if self.t >= self.m:
            raise ValueError("t must lie in [0, m-1]")
        if any(self.M % delta for delta in self.r.exponents):
            raise ValueError("r is indexed by divisors of M only")
        if any(self.N % delta for delta in self.r_prime.exponents):
            raise ValueError("r' is indexed by divisors of N only")
        return self

    @classmethod
    def from_chart(cls, m: int, M: int, N: int, t: int,
                   r: tuple[int, ...], r_prime: tuple[int, ...]) -> "RaduTuple":
        return cls(m=m, M=M, N=N, t=t,
                   r=EtaQuotient.from_vector(M, r),
                   r_prime=EtaQuotient.from_vector(N, r_prime))

    def __str__(self) -> str:
        r = ",".join(str(x) for x in self.r.vector(self.M))
        rp = ",".join(str(x) for x in self.r_prime.vector(self.N))
        return f"({self.m},{self.M},{self.N},{self.t},({r})) r'=({rp})"


class CosetRep(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    d: int

    @model_validator(mode="after")
    def unimodular(self) -> "CosetRep":
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("coset representatives have determinant 1")
        return self


class DeltaStarConditions(BaseModel):
    prime_support: bool
    divisor_support: bool
    weight_divisibility: bool
    sum_divisibility: bool
    level_divisibility: bool

    def all_hold(self) -> bool:
        return all(self.model_dump().values())


class SlackEntry(BaseModel):
    delta: int
    num: int
    den: int = Field(gt=0)


class FiniteCheck(BaseModel):
    t_prime: int
    n: int
    residue: int


class Certificate(BaseModel):
    schema_version: int = SCHEMA_VERSION
    tuple: RaduTuple
    claim: CongruenceClaim
    u: int = Field(ge=2)
    conditions: Optional[DeltaStarConditions] = None
    kappa: int
    p_t_set: list[int] = Field(default_factory=list)
    rep_count: int = 0
    nu_num: Optional[int] = None
    nu_den: Optional[int] = None
    nu_floor: Optional[int] = None
    slacks: list[SlackEntry] = Field(default_factory=list)
    precondition_order: int = 0
    precondition_passed: bool = False
    finite_checks: list[FiniteCheck] = Field(default_factory=list)
    verified: bool
    failed_stage: Optional[str] = None

    @model_validator(mode="after")
    def verified_is_earned(self) -> "Certificate":
        if not self.verified:
            return self
        if self.conditions is None or not self.conditions.all_hold():
            raise ValueError("a verified certificate needs every Delta* condition")
        if any(s.num < 0 for s in self.slacks):
            raise ValueError("a verified certificate needs nonnegative slacks")
        if not self.precondition_passed or any(c.residue for c in self.finite_checks):
            raise ValueError("a verified certificate needs a clean finite check")
        if self.tuple.t not in self.p_t_set:
            raise ValueError("t always belongs to P(t)")
        return self


class RunConfig(BaseModel):
    order_ceiling: int = Field(default=ORDER_CEILING, gt=0)
    jobs: int = Field(default=1, ge=1)
    output_format: Literal["summary", "records"] = "summary"
    ledger_path: Optional[str] = None
    j_max: int = Field(default=DEFAULT_J_MAX, ge=0)
    schema_version: int = SCHEMA_VERSION


class CatalogueRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    tag: str
    claim: CongruenceClaim
    n_max: int = Field(ge=0)
    j_max: int = Field(default=0, ge=0)
    expect_verified: bool = True
    note: str = ""


class ChartRow(BaseModel):
    """A tabulated Radu tuple with the values printed next to it."""

    model_config = ConfigDict(frozen=True)

    tag: str
    tuple: RaduTuple
    k: int = Field(ge=1)
    u: int = Field(ge=2)
    printed_p_set: list[int]
    printed_nu_floor: int
    printed_t: Optional[int] = None
    printed: bool = True

    def claim(self) -> CongruenceClaim:
        return CongruenceClaim(k_base=self.k, A=self.tuple.m, B=self.tuple.t, modulus=self.u)


class ChartComparison(BaseModel):
    tag: str
    computed_p_set: list[int]
    printed_p_set: list[int]
    p_set_match: Literal["exact", "subset", "mismatch"]
    computed_nu_floor: int
    printed_nu_floor: int
    t_matches_print: bool

    @property
    def nu_matches(self) -> bool:
        return self.computed_nu_floor == self.printed_nu_floor


class ScanConfig(BaseModel):
    """Claims listed outright plus the cartesian sweep k_expressions x progressions x moduli."""

    claims: list[str] = Field(default_factory=list)
    k_expressions: list[str] = Field(default_factory=list)
    progressions: list[str] = Field(default_factory=list)
    moduli: list[int] = Field(default_factory=list)
    n_max: int = Field(default=DEFAULT_N_MAX, ge=0)
    j_max: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def has_work(self) -> "ScanConfig":
        sweep = (self.k_expressions, self.progressions, self.moduli)
        if any(sweep) and not all(sweep):
            raise ValueError("a sweep needs k_expressions, progressions and moduli together")
        if not self.claims and not all(sweep):
            raise ValueError("a scan needs claims or a sweep")
        return self

    def claim_texts(self) -> list[str]:
        texts = list(self.claims)
        for k in self.k_expressions:
            for progression in self.progressions:
                for modulus in self.moduli:
                    texts.append(f"d[{k}]({progression})=0 mod {modulus}")
        return texts
