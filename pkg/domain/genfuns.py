"""Closed binomial-sum forms for the 4-dissection progressions of d_{4j+3}, d_{8j+7}, d_{16j+15}."""
from dataclasses import dataclass
from math import comb
from typing import Callable

from domain.diamonds import progression
from domain.models import BinomialGenFun, EtaQuotient, GenFunFamily, GenFunReading, RingDescriptor
from domain.qproducts import eta_quotient
from domain.series import TruncatedSeries, add, mul, one, scale, shift, truncate, zero

# q-weights carried by one step in k or in m
X_STEP = EtaQuotient(exponents={1: 8, 2: -24, 4: 16})
Z_STEP = EtaQuotient(exponents={2: 4, 4: -12, 8: 8})


def binom(a: int, b: int) -> int:
    """C(a, b), zero when b falls outside [0, a]."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class _BivariateSum:
    base: EtaQuotient
    k_max: int
    m_max: int
    coefficient: Callable[[int, int], int]


@dataclass(frozen=True)
class FamilyForm:
    k: Callable[[int], int]
    residue: int
    leading: int
    m_step: EtaQuotient
    sums: Callable[[int, GenFunReading], list[_BivariateSum]]


def _eval_bivariate(piece: _BivariateSum, m_step: EtaQuotient, order: int) -> TruncatedSeries:
    ring = RingDescriptor.integers()
    k_top = min(piece.k_max, order - 1)
    m_top = min(piece.m_max, order - 1)
    y = eta_quotient(X_STEP, order)
    z = eta_quotient(m_step, order)

    z_powers = [one(ring, order)]
    for _ in range(m_top):
        z_powers.append(mul(z_powers[-1], z))

    outer = zero(ring, order)
    y_power = one(ring, order)
    for k in range(k_top + 1):
        inner = zero(ring, order - k)
        for m in range(min(m_top, order - 1 - k) + 1):
            c = piece.coefficient(k, m)
            if c:
                inner = add(inner, truncate(shift(scale(z_powers[m], c), m), order - k))
        outer = add(outer, shift(mul(truncate(y_power, order - k), inner), k))
        y_power = mul(y_power, y)
    return mul(eta_quotient(piece.base, order), outer)


def _quotient(**exponents: int) -> EtaQuotient:
    return EtaQuotient(exponents={int(name[1:]): e for name, e in exponents.items() if e})


def _d4j3_base(j: int, f1: int, f2: int, f4: int, f8: int) -> EtaQuotient:
    return _quotient(f1=-(f1 + 65 * j), f2=f2 + 30 * j, f4=f4 + 53 * j, f8=-(f8 + 26 * j))


def _d4j3_4n2(j: int, _reading: GenFunReading) -> list[_BivariateSum]:
    return [
        _BivariateSum(
            base=_d4j3_base(j, 55, 27, 39, 18),
            k_max=(3 * j + 2) // 2,
            m_max=(13 * j + 10) // 2,
            coefficient=lambda k, m: 2 ** (2 * (2 * k + m)) * binom(6 * j + 5, 4 * k) * binom(13 * j + 11, 2 * m + 1),
        ),
        _BivariateSum(
            base=_d4j3_base(j, 51, 13, 53, 22),
            k_max=(3 * j + 1) // 2,
            m_max=(13 * j + 11) // 2,
            coefficient=lambda k, m: 2 ** (2 * (2 * k + m) + 1) * binom(6 * j + 5, 4 * k + 2) * binom(13 * j + 11, 2 * m),
        ),
    ]


def _d4j3_4n3(j: int, _reading: GenFunReading) -> list[_BivariateSum]:
    return [
        _BivariateSum(
            base=_d4j3_base(j, 49, 7, 57, 22),
            k_max=(3 * j + 1) // 2,
            m_max=(13 * j + 11) // 2,
            coefficient=lambda k, m: 2 ** (2 * (2 * k + m) + 1) * binom(6 * j + 5, 4 * k + 3) * binom(13 * j + 11, 2 * m),
        ),
        _BivariateSum(
            base=_d4j3_base(j, 53, 21, 43, 18),
            k_max=(3 * j + 2) // 2,
            m_max=(13 * j + 10) // 2,
            coefficient=lambda k, m: 2 ** (2 * (2 * k + m)) * binom(6 * j + 5, 4 * k + 1) * binom(13 * j + 11, 2 * m + 1),
        ),
    ]


def _d8j7_base(j: int, f1: int, f2: int, f4: int) -> EtaQuotient:
    return _quotient(f1=-(f1 + 182 * j), f2=f2 + 242 * j, f4=-(f4 + 76 * j))


def _d8j7_4n2(j: int, _reading: GenFunReading) -> list[_BivariateSum]:
    base = _d8j7_base(j, 164, 211, 62)
    return [
        _BivariateSum(
            base=base,
            k_max=3 * j + 2,
            m_max=(13 * j + 12) // 2,
            coefficient=lambda k, m: 2 ** (4 * (k + m)) * binom(12 * j + 11, 4 * k) * binom(13 * j + 12, 2 * m + 1),
        ),
        _BivariateSum(
            base=base,
            k_max=3 * j + 2,
            # 2m runs up to 13j + 12 itself; at even j the top term is nonzero
            m_max=(13 * j + 12) // 2,
            coefficient=lambda k, m: 2 ** (4 * (k + m)) * binom(12 * j + 11, 4 * k + 2) * binom(13 * j + 12, 2 * m),
        ),
    ]


def _d8j7_4n3(j: int, _reading: GenFunReading) -> list[_BivariateSum]:
    a, b = 12 * j + 11, 13 * j + 12
    return [
        _BivariateSum(
            base=_d8j7_base(j, 162, 205, 58),
            k_max=3 * j + 2,
            m_max=(13 * j + 12) // 2,
            coefficient=lambda k, m: 2 ** (4 * (k + m)) * (
                binom(a, 4 * k + 1) * binom(b, 2 * m + 1) + binom(a, 4 * k + 3) * binom(b, 2 * m)
            ),
        ),
    ]


def _separated_k_column(a: int, b: int, k: int, reading: GenFunReading) -> int:
    """Binomial pair of the k-only sum in the separated d_{16j+15}(4n+3) display."""
    if reading == GenFunReading.SEPARATED_PRINTED:
        # printed with an unbound m; read at m = 0
        return binom(a, 3) * binom(b, 2) + binom(a, 1) * binom(b, 3)
    if reading == GenFunReading.SEPARATED_INDEX_K:
        return binom(a, 3) * binom(b, 2 * k + 2) + binom(a, 1) * binom(b, 2 * k + 3)
    return binom(a, 4 * k + 7) * binom(b, 0) + binom(a, 4 * k + 5) * binom(b, 1)


def _d16j15_4n3(j: int, reading: GenFunReading) -> list[_BivariateSum]:
    a, b = 24 * j + 23, 26 * j + 25
    base = _quotient(f1=-(344 + 364 * j), f2=447 + 484 * j, f4=-(134 + 152 * j))

    def combined(k: int, m: int) -> int:
        return 2 ** (4 * (k + m)) * (
            binom(a, 4 * k + 3) * binom(b, 2 * m) + binom(a, 4 * k + 1) * binom(b, 2 * m + 1)
        )

    def separated(k: int, m: int) -> int:
        if k == 0 and m == 0:
            return binom(a, 3) + binom(a, 1) * binom(b, 1)
        if k == 0:
            i = m - 1
            return 2 ** (4 * (i + 1)) * (binom(a, 3) * binom(b, 2 * i + 2) + binom(a, 1) * binom(b, 2 * i + 3))
        if m == 0:
            return 2 ** (4 * k) * _separated_k_column(a, b, k - 1, reading)
        i, l = k - 1, m - 1
        return 2 ** (4 * (i + l + 2)) * (
            binom(a, 4 * i + 7) * binom(b, 2 * l + 2) + binom(a, 4 * i + 5) * binom(b, 2 * l + 3)
        )

    return [
        _BivariateSum(
            base=base,
            k_max=6 * j + 5,
            m_max=13 * j + 12,
            coefficient=combined if reading == GenFunReading.COMBINED else separated,
        )
    ]


FAMILIES: dict[GenFunFamily, FamilyForm] = {
    GenFunFamily.D4J3_4N2: FamilyForm(lambda j: 4 * j + 3, 2, 2, Z_STEP, _d4j3_4n2),
    GenFunFamily.D4J3_4N3: FamilyForm(lambda j: 4 * j + 3, 3, 4, Z_STEP, _d4j3_4n3),
    GenFunFamily.D8J7_4N2: FamilyForm(lambda j: 8 * j + 7, 2, 4, X_STEP, _d8j7_4n2),
    GenFunFamily.D8J7_4N3: FamilyForm(lambda j: 8 * j + 7, 3, 8, X_STEP, _d8j7_4n3),
    GenFunFamily.D16J15_4N3: FamilyForm(lambda j: 16 * j + 15, 3, 8, X_STEP, _d16j15_4n3),
}


def exact_genfun(spec: BinomialGenFun, order: int) -> TruncatedSeries:
    form = FAMILIES[spec.family]
    total = zero(RingDescriptor.integers(), order)
    for piece in form.sums(spec.j, spec.reading):
        total = add(total, _eval_bivariate(piece, form.m_step, order))
    return scale(total, form.leading)


def extracted_genfun(spec: BinomialGenFun, order: int) -> TruncatedSeries:
    """The same progression pulled out of d_k by 4-dissection."""
    form = FAMILIES[spec.family]
    return progression(form.k(spec.j), 4, form.residue, order)


def family_k(spec: BinomialGenFun) -> int:
    return FAMILIES[spec.family].k(spec.j)
