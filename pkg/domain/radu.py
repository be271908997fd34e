import math
from fractions import Fraction

from sympy import divisors, factorint, primefactors

from domain.constants import KAPPA_COPRIME_TO_SIX
from domain.errors import UnsupportedLevelError
from domain.models import CosetRep, DeltaStarConditions, RaduTuple


def kappa(m: int) -> int:
    if math.gcd(m, 6) == 1:
        return KAPPA_COPRIME_TO_SIX
    return math.gcd(m * m - 1, 24)


def _weighted_sum(tuple_: RaduTuple) -> int:
    return sum(delta * r for delta, r in tuple_.r.exponents.items())


def delta_star_check(tuple_: RaduTuple) -> DeltaStarConditions:
    m, N, t = tuple_.m, tuple_.N, tuple_.t
    k = kappa(m)
    r = tuple_.r.exponents

    weight = k * N * sum(Fraction(r_d * m * N, delta) for delta, r_d in r.items())
    level_gcd = math.gcd(-24 * k * t - k * _weighted_sum(tuple_), 24 * m)

    return DeltaStarConditions(
        prime_support=set(primefactors(m)) <= set(primefactors(N)),
        divisor_support=all((m * N) % delta == 0 for delta in tuple_.r.support()),
        weight_divisibility=weight.denominator == 1 and weight.numerator % 24 == 0,
        sum_divisibility=(k * N * sum(r.values())) % 8 == 0,
        level_divisibility=N % (24 * m // level_gcd) == 0,
    )


def p_set(tuple_: RaduTuple) -> list[int]:
    m = tuple_.m
    modulus = 24 * m
    squares = {x * x % modulus for x in range(modulus) if math.gcd(x, modulus) == 1}
    weighted = _weighted_sum(tuple_)
    result = set()
    # every unit square mod 24m is 1 mod 24
    for s in squares:
        result.add((tuple_.t * s + (s - 1) // 24 * weighted) % m)
    return sorted(result)


def is_supported_level(N: int) -> bool:
    def square_free(n: int) -> bool:
        return all(e == 1 for e in factorint(n).values())

    return square_free(N) or (N % 2 == 0 and square_free(N // 2))


def coset_reps(N: int) -> list[CosetRep]:
    """Representatives (1 0; delta 1) of the double cosets, one per divisor of N."""
    if not is_supported_level(N):
        raise UnsupportedLevelError(f"neither {N} nor {N}/2 is square-free")
    return [CosetRep(a=1, b=0, c=int(delta), d=1) for delta in divisors(N)]


def p_gamma(tuple_: RaduTuple, gamma: CosetRep) -> Fraction:
    m, k = tuple_.m, kappa(tuple_.m)
    a, c = gamma.a, gamma.c
    best = None
    for lam in range(m):
        value = sum(
            Fraction(r_d * math.gcd(delta * (a + k * lam * c), m * c) ** 2, delta * m)
            for delta, r_d in tuple_.r.exponents.items()
        )
        if best is None or value < best:
            best = value
    return best / 24


def p_prime_gamma(tuple_: RaduTuple, gamma: CosetRep) -> Fraction:
    return sum(
        (Fraction(r_d * math.gcd(delta, gamma.c) ** 2, delta) for delta, r_d in tuple_.r_prime.exponents.items()),
        Fraction(0),
    ) / 24


def slack(tuple_: RaduTuple, gamma: CosetRep) -> Fraction:
    return p_gamma(tuple_, gamma) + p_prime_gamma(tuple_, gamma)


def gamma0_index(N: int) -> int:
    index = Fraction(N)
    for ell in primefactors(N):
        index *= Fraction(ell + 1, ell)
    return int(index)


def nu_bound(tuple_: RaduTuple) -> tuple[Fraction, int]:
    m = tuple_.m
    r, r_prime = tuple_.r.exponents, tuple_.r_prime.exponents
    t_min = p_set(tuple_)[0]
    total = sum(r.values()) + sum(r_prime.values())
    nu = Fraction(1, 24) * (
        total * gamma0_index(tuple_.N)
        - sum(delta * e for delta, e in r_prime.items())
        - Fraction(_weighted_sum(tuple_), m)
    ) - Fraction(t_min, m)
    return nu, math.floor(nu)
