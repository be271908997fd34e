import logging
import math
from functools import lru_cache
from typing import Optional

import numpy as np

from domain.models import EtaQuotient, RingDescriptor
from domain.series import (
    TruncatedSeries,
    add,
    inflate,
    invert,
    make_series,
    mul,
    power,
    reduce_mod,
    scale,
    shift,
    truncate,
)

logger = logging.getLogger(__name__)

INTEGERS = RingDescriptor.integers()


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _from_array(coeffs: np.ndarray) -> TruncatedSeries:
    return make_series(INTEGERS, coeffs.tolist())


@lru_cache(maxsize=64)
def _euler_product(order: int) -> TruncatedSeries:
    coeffs = np.zeros(order, dtype=object)
    k = 0
    while True:
        placed = False
        for j in ((k,) if k == 0 else (k, -k)):
            e = j * (3 * j - 1) // 2
            if e < order:
                coeffs[e] += -1 if k % 2 else 1
                placed = True
        if not placed:
            break
        k += 1
    return _from_array(coeffs)


def pochhammer_f(n: int, order: int) -> TruncatedSeries:
    """f_n = (q^n; q^n)_inf via the pentagonal number theorem."""
    if n < 1 or order < 1:
        raise ValueError("pochhammer_f needs n >= 1 and order >= 1")
    return truncate(inflate(_euler_product(_ceil_div(order, n)), n), order)


def sparse_pochhammer(a: int, b: int, order: int) -> TruncatedSeries:
    """(q^a; q^b)_inf = prod_{j>=0} (1 - q^{a+bj})."""
    if a < 1 or b < 1:
        raise ValueError("sparse products need a >= 1 and b >= 1")
    coeffs = np.zeros(order, dtype=object)
    coeffs[0] = 1
    for e in range(a, order, b):
        coeffs[e:] = coeffs[e:] - coeffs[: order - e]
    return _from_array(coeffs)


def _ring_power(base: TruncatedSeries, exponent: int, modulus: Optional[int]) -> TruncatedSeries:
    if modulus is not None:
        base = reduce_mod(base, modulus)
    return power(base, exponent)


def eta_quotient(eq: EtaQuotient, order: int, modulus: Optional[int] = None) -> TruncatedSeries:
    ring = INTEGERS if modulus is None else RingDescriptor.residues(modulus)
    result = make_series(ring, [1] + [0] * (order - 1))
    for delta, r in eq.exponents.items():
        if r == 0:
            continue
        inner = _ceil_div(order, delta)
        factor = _ring_power(_euler_product(inner), r, modulus)
        result = mul(result, truncate(inflate(factor, delta), order))
    logger.debug("eta quotient %s to order %d over %s", eq, order, ring)
    return result


def jacobi_cube(order: int) -> TruncatedSeries:
    coeffs = np.zeros(order, dtype=object)
    j = 0
    while (e := j * (j + 1) // 2) < order:
        coeffs[e] = (-1) ** j * (2 * j + 1)
        j += 1
    return _from_array(coeffs)


def theta_f22_over_f1(order: int) -> TruncatedSeries:
    coeffs = np.zeros(order, dtype=object)
    j = 0
    while (e := j * (j + 1) // 2) < order:
        coeffs[e] = 1
        j += 1
    return _from_array(coeffs)


def theta_f25_over_f12(order: int) -> TruncatedSeries:
    coeffs = np.zeros(order, dtype=object)
    bound = math.isqrt(order) + 1
    for j in range(-bound, bound + 1):
        e = 3 * j * j + 2 * j
        if 0 <= e < order:
            coeffs[e] += (-1) ** abs(j) * (3 * j + 1)
    return _from_array(coeffs)


def borwein_a(order: int) -> TruncatedSeries:
    """Borwein cubic theta a(q) = sum over m, n of q^(m^2 + mn + n^2)."""
    coeffs = np.zeros(order, dtype=object)
    bound = math.isqrt(order) + 2
    span = np.arange(-bound, bound + 1)
    m, n = np.meshgrid(span, span)
    exponents = (m * m + m * n + n * n).ravel()
    exponents = exponents[exponents < order]
    counts = np.bincount(exponents, minlength=order)
    for e in np.flatnonzero(counts):
        coeffs[e] = int(counts[e])
    return _from_array(coeffs)


def rr_product(order: int) -> TruncatedSeries:
    """R(q) without its q^(1/5) prefactor, as (q, q^4; q^5) / (q^2, q^3; q^5)."""
    numerator = mul(sparse_pochhammer(1, 5, order), sparse_pochhammer(4, 5, order))
    denominator = mul(sparse_pochhammer(2, 5, order), sparse_pochhammer(3, 5, order))
    return mul(numerator, invert(denominator))


def scaled(builder, s: int, order: int) -> TruncatedSeries:
    """builder(q^s) to the given order."""
    return truncate(inflate(builder(_ceil_div(order, s)), s), order)


def p_alpha_beta(alpha: int, beta: int, order: int) -> TruncatedSeries:
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    e1, e2 = alpha + 2 * beta, 2 * alpha - beta
    x = mul(power(rr_product(order), e1), power(scaled(rr_product, 2, order), e2))
    sign = -1 if (alpha + beta) % 2 else 1
    tail = scale(x, sign)
    if 2 * alpha:
        tail = truncate(shift(tail, 2 * alpha), order)
    return add(invert(x), tail)
