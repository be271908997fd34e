from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from domain.errors import NonUnitError, RingMismatchError
from domain.models import RingDescriptor

_INT64_LIMIT = 2**62
_INT64_MODULUS_LIMIT = 2**31


class TruncatedSeries:
    """Coefficients a_0 .. a_{order-1} of a power series known mod q^order."""

    __slots__ = ("ring", "_coeffs")

    def __init__(self, ring: RingDescriptor, coeffs: np.ndarray):
        if len(coeffs) < 1:
            raise ValueError("a truncated series has order >= 1")
        coeffs.setflags(write=False)
        self.ring = ring
        self._coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.order:
            raise IndexError(f"coefficient {n} lies outside order {self.order}")
        return int(self._coeffs[n])

    def to_list(self) -> list[int]:
        return [int(c) for c in self._coeffs]

    def __len__(self) -> int:
        return self.order

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, scale(other, -1))

    def __neg__(self) -> "TruncatedSeries":
        return scale(self, -1)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __pow__(self, e: int) -> "TruncatedSeries":
        return power(self, e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.to_list() == other.to_list()

    def __hash__(self) -> int:
        return hash((self.ring.kind, self.ring.modulus, tuple(self.to_list())))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.to_list()[:8])
        more = ", ..." if self.order > 8 else ""
        return f"TruncatedSeries({self.ring}, order={self.order}, [{head}{more}])"


@dataclass(frozen=True)
class Dissection:
    m: int
    parts: tuple[TruncatedSeries, ...]


def _storage_dtype(ring: RingDescriptor):
    if ring.is_residues and ring.modulus < _INT64_MODULUS_LIMIT:
        return np.int64
    return object


def _canonical(ring: RingDescriptor, values) -> np.ndarray:
    if ring.is_residues:
        arr = np.array([int(v) % ring.modulus for v in values], dtype=object)
    else:
        arr = np.array([int(v) for v in values], dtype=object)
    return arr.astype(_storage_dtype(ring))


def _wrap(ring: RingDescriptor, arr: np.ndarray) -> TruncatedSeries:
    if ring.is_residues:
        arr = arr % ring.modulus
    return TruncatedSeries(ring, np.ascontiguousarray(arr).astype(_storage_dtype(ring)))


def make_series(ring: RingDescriptor, coeffs: Sequence[int]) -> TruncatedSeries:
    if len(coeffs) == 0:
        raise ValueError("a truncated series needs at least one coefficient")
    return TruncatedSeries(ring, _canonical(ring, coeffs))


def zero(ring: RingDescriptor, order: int) -> TruncatedSeries:
    return make_series(ring, [0] * order)


def one(ring: RingDescriptor, order: int) -> TruncatedSeries:
    return monomial(ring, order, 0, 1)


def monomial(ring: RingDescriptor, order: int, power_: int, coefficient: int = 1) -> TruncatedSeries:
    coeffs = [0] * order
    if power_ < order:
        coeffs[power_] = coefficient
    return make_series(ring, coeffs)


def _same_ring(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"cannot combine series over {a.ring} and {b.ring}")


def truncate(a: TruncatedSeries, order: int) -> TruncatedSeries:
    if not 1 <= order <= a.order:
        raise ValueError(f"cannot truncate order {a.order} series to {order}")
    if order == a.order:
        return a
    return TruncatedSeries(a.ring, a.coeffs[:order].copy())


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _same_ring(a, b)
    n = min(a.order, b.order)
    return _wrap(a.ring, a.coeffs[:n] + b.coeffs[:n])


def scale(a: TruncatedSeries, c: int) -> TruncatedSeries:
    if a.ring.is_residues:
        c %= a.ring.modulus
    return _wrap(a.ring, a.coeffs.astype(object) * c)


def _convolve(ring: RingDescriptor, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    a, b = a[:n], b[:n]
    if a.dtype == np.int64 and b.dtype == np.int64:
        bound = (ring.modulus - 1) ** 2 * min(len(a), len(b))
        if bound < _INT64_LIMIT:
            return np.convolve(a, b)[:n] % ring.modulus
    a, b = a.astype(object), b.astype(object)
    out = np.zeros(n, dtype=object)
    for i in np.flatnonzero(a):
        out[i:] += a[i] * b[: n - i]
    if ring.is_residues:
        out %= ring.modulus
    return out


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _same_ring(a, b)
    n = min(a.order, b.order)
    return _wrap(a.ring, _convolve(a.ring, a.coeffs, b.coeffs, n))


def _unit_inverse(ring: RingDescriptor, c: int) -> int:
    if ring.is_residues:
        try:
            return pow(c, -1, ring.modulus)
        except ValueError:
            raise NonUnitError(f"constant term {c} is not a unit in {ring}") from None
    if c not in (1, -1):
        raise NonUnitError(f"constant term {c} is not a unit in {ring}")
    return c


def invert(a: TruncatedSeries) -> TruncatedSeries:
    n = a.order
    dtype = a.coeffs.dtype
    inverse = np.array([_unit_inverse(a.ring, a[0])], dtype=dtype)
    precision = 1
    # Newton step: b <- b (2 - a b), doubling the known precision each pass
    while precision < n:
        precision = min(2 * precision, n)
        padded = np.zeros(precision, dtype=dtype)
        padded[: len(inverse)] = inverse
        correction = -_convolve(a.ring, a.coeffs, padded, precision)
        correction[0] += 2
        if a.ring.is_residues:
            correction %= a.ring.modulus
        inverse = _convolve(a.ring, padded, correction, precision)
    return _wrap(a.ring, inverse)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    if e < 0:
        return power(invert(a), -e)
    result = one(a.ring, a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def dissect(a: TruncatedSeries, m: int) -> Dissection:
    if m < 1:
        raise ValueError("dissection modulus must be >= 1")
    if m > a.order:
        raise ValueError(f"cannot {m}-dissect a series of order {a.order}")
    parts = tuple(TruncatedSeries(a.ring, a.coeffs[r::m].copy()) for r in range(m))
    return Dissection(m=m, parts=parts)


def reassemble(d: Dissection) -> TruncatedSeries:
    ring = d.parts[0].ring
    n = sum(p.order for p in d.parts)
    out = np.zeros(n, dtype=d.parts[0].coeffs.dtype)
    for r, part in enumerate(d.parts):
        out[r::d.m] = part.coeffs
    return TruncatedSeries(ring, out)


def inflate(a: TruncatedSeries, m: int) -> TruncatedSeries:
    if m < 1:
        raise ValueError("inflation factor must be >= 1")
    if m == 1:
        return a
    out = np.zeros(a.order * m, dtype=a.coeffs.dtype)
    out[::m] = a.coeffs
    return TruncatedSeries(a.ring, out)


def shift(a: TruncatedSeries, j: int) -> TruncatedSeries:
    if j < 0:
        raise ValueError("shift amount must be >= 0")
    if j == 0:
        return a
    out = np.zeros(a.order + j, dtype=a.coeffs.dtype)
    out[j:] = a.coeffs
    return TruncatedSeries(a.ring, out)


def reduce_mod(a: TruncatedSeries, modulus: int) -> TruncatedSeries:
    if modulus < 2:
        raise ValueError("reduction modulus must be >= 2")
    if a.ring.is_residues and a.ring.modulus % modulus:
        raise RingMismatchError(f"cannot reduce {a.ring} modulo {modulus}")
    ring = RingDescriptor.residues(modulus)
    return _wrap(ring, a.coeffs.astype(object))


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries) -> Optional[int]:
    _same_ring(a, b)
    n = min(a.order, b.order)
    diff = np.flatnonzero(a.coeffs[:n].astype(object) != b.coeffs[:n].astype(object))
    return int(diff[0]) if len(diff) else None
