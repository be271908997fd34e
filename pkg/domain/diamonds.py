from typing import Optional

from domain.constants import NAIVE_ORACLE_MAX_ORDER
from domain.errors import OrderCeilingError
from domain.models import EtaQuotient, RingDescriptor
from domain.qproducts import eta_quotient
from domain.series import TruncatedSeries, dissect, make_series


def dk_quotient(k: int) -> EtaQuotient:
    return EtaQuotient(exponents={1: -(3 * k + 1), 2: k})


def dk_series(k: int, order: int, modulus: Optional[int] = None) -> TruncatedSeries:
    """Sum d_k(n) q^n = f_2^k / f_1^(3k+1); reduction happens before inversion."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return eta_quotient(dk_quotient(k), order, modulus)


def progression(k: int, A: int, B: int, order: int, modulus: Optional[int] = None) -> TruncatedSeries:
    """Sum d_k(An+B) q^n to the given order."""
    return dissect(dk_series(k, A * order, modulus), A).parts[B]


def _naive_mul(a: list[int], b: list[int]) -> list[int]:
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j in range(n - i):
                out[i + j] += ai * b[j]
    return out


def _naive_euler(step: int, n: int) -> list[int]:
    coeffs = [1] + [0] * (n - 1)
    for e in range(step, n, step):
        for i in range(n - 1, e - 1, -1):
            coeffs[i] -= coeffs[i - e]
    return coeffs


def dk_oracle(k: int, order: int) -> TruncatedSeries:
    """Slow independent route: literal products, repeated multiplication, long division."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if order > NAIVE_ORACLE_MAX_ORDER:
        raise OrderCeilingError(order, NAIVE_ORACLE_MAX_ORDER)
    f1 = _naive_euler(1, order)
    f2 = _naive_euler(2, order)

    denominator = [1] + [0] * (order - 1)
    for _ in range(3 * k + 1):
        denominator = _naive_mul(denominator, f1)
    numerator = [1] + [0] * (order - 1)
    for _ in range(k):
        numerator = _naive_mul(numerator, f2)

    # long division by a series with constant term 1
    quotient = [0] * order
    for n in range(order):
        quotient[n] = numerator[n] - sum(denominator[i] * quotient[n - i] for i in range(1, n + 1))
    return make_series(RingDescriptor.integers(), quotient)
