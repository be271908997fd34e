import logging
from fnmatch import fnmatchcase
from typing import Iterable, Optional

from sympy import primefactors

from domain.constants import DEFAULT_HEAVY_IDENTITY_ORDER, DEFAULT_IDENTITY_ORDER
from domain.errors import UnknownIdentityError
from domain.expressions import (
    CubicThetaFactor,
    Evaluator,
    Expression,
    GenFunFactor,
    IdentityCheck,
    IdentityRecord,
    PAlphaBetaFactor,
    PochhammerFactor,
    ProgressionFactor,
    RogersRamanujanFactor,
    ThetaSumFactor,
    eta as E,
    expr,
    term as T,
)
from domain.genfuns import exact_genfun, extracted_genfun
from domain.models import BinomialGenFun, GenFunFamily, GenFunReading
from domain.series import first_mismatch, reduce_mod

logger = logging.getLogger(__name__)

HEAVY = DEFAULT_HEAVY_IDENTITY_ORDER
LIGHT = DEFAULT_IDENTITY_ORDER


def a(scale: int = 1, exponent: int = 1) -> CubicThetaFactor:
    return CubicThetaFactor(scale=scale, exponent=exponent)


def R(scale: int = 1, exponent: int = 1) -> RogersRamanujanFactor:
    return RogersRamanujanFactor(scale=scale, exponent=exponent)


def P(alpha: int, beta: int) -> PAlphaBetaFactor:
    return PAlphaBetaFactor(alpha=alpha, beta=beta)


def poch(start: int, step: int, exponent: int = 1) -> PochhammerFactor:
    return PochhammerFactor(start=start, step=step, exponent=exponent)


def theta(name: str, scale: int = 1, exponent: int = 1) -> ThetaSumFactor:
    return ThetaSumFactor(name=name, scale=scale, exponent=exponent)


def dk(k: int, A: int = 1, B: int = 0) -> ProgressionFactor:
    return ProgressionFactor(k=k, A=A, B=B)


def genfun(family: GenFunFamily, j: int, reading: GenFunReading = GenFunReading.COMBINED) -> GenFunFactor:
    return GenFunFactor(spec=BinomialGenFun(family=family, j=j, reading=reading))


ZERO = Expression(terms=())


def _record(id_: str, location: str, lhs: Expression, rhs: Expression,
            modulus: Optional[int] = None, order: int = LIGHT, expect: bool = True, note: str = "") -> IdentityRecord:
    return IdentityRecord(id=id_, location=location, lhs=lhs, rhs=rhs, modulus=modulus, default_order=order,
                          expect_verified=expect, note=note)


def _printed(record: IdentityRecord, rhs: Expression, note: str) -> IdentityRecord:
    """The form as printed, kept next to its corrected record and expected to fail."""
    return _record(f"{record.id}-printed", f"{record.location}, as printed", record.lhs, rhs,
                   modulus=record.modulus, order=record.default_order, expect=False, note=note)


def _three_dissections() -> list[IdentityRecord]:
    inverse_cube = _record("eq-2.5", "(2.5)", expr(T(1, 0, E(f1=-3))),
                           expr(T(1, 0, a(3, 2), E(f9=3, f3=-10)),
                                T(3, 1, a(3), E(f9=6, f3=-11)),
                                T(9, 2, E(f9=9, f3=-12))))
    return [
        inverse_cube,
        _printed(inverse_cube,
                 expr(T(1, 0, a(3, 2), E(f9=3, f3=-10)),
                      T(3, 1, a(3, 2), E(f9=6, f3=-11)),
                      T(9, 2, E(f9=9, f3=-12))),
                 "middle term printed with a^2(q^3); the q^(3n+1) part carries a single a(q^3)"),
        _record("eq-2.1", "(2.1)", expr(T(1, 0, E(f1=2, f2=-1))),
                expr(T(1, 0, E(f9=2, f18=-1)), T(-2, 1, E(f3=1, f18=2, f6=-1, f9=-1)))),
        _record("eq-2.2", "(2.2)", expr(T(1, 0, E(f2=2, f1=-1))),
                expr(T(1, 0, E(f6=1, f9=2, f3=-1, f18=-1)), T(1, 1, E(f18=2, f9=-1)))),
        _record("eq-2.3", "(2.3)", expr(T(1, 0, E(f1=1, f2=-2))),
                expr(T(1, 0, E(f3=2, f9=3, f6=-6)),
                     T(-1, 1, E(f3=3, f18=3, f6=-7)),
                     T(1, 2, E(f3=4, f18=6, f6=-8, f9=-3)))),
        _record("eq-2.4", "(2.4)", expr(T(1, 0, E(f1=3))),
                expr(T(1, 0, a(3), E(f3=1)), T(-3, 1, E(f9=3)))),
        _record("eq-2.6", "(2.6)", expr(T(1, 0, E(f1=1, f2=1))),
                expr(T(1, 0, E(f6=1, f9=4, f3=-1, f18=-2)),
                     T(-1, 1, E(f9=1, f18=1)),
                     T(-2, 2, E(f3=1, f18=4, f6=-1, f9=-2)))),
        _record("eq-2.7", "(2.7)", expr(T(1, 0, a())),
                expr(T(1, 0, E(f1=3, f3=-1)), T(9, 1, E(f9=3, f3=-1)))),
        _record("eq-2.8", "(2.8)", expr(T(1, 0, a(1, 3))),
                expr(T(1, 0, E(f1=9, f3=-3)), T(27, 1, E(f3=9, f1=-3)))),
        _record("eq-2.9", "(2.9)", expr(T(8, 1, E(f1=3, f6=5, f2=-3, f3=-1))),
                expr(T(1, 0, E(f3=8, f6=-4)), T(-1, 0, E(f1=8, f2=-4)))),
        _record("eq-6.28", "(6.28)", expr(T(1, 0, a())),
                expr(T(1, 0, a(3)), T(6, 1, E(f9=3, f3=-1)))),
        _record("u-2.a-mod3", "a(q) = 1 (mod 3)", expr(T(1, 0, a())), expr(T(1, 0)), modulus=3),
        _record("u-2.a3-mod9", "a^3(q) = 1 (mod 9)", expr(T(1, 0, a(1, 3))), expr(T(1, 0)), modulus=9),
        _record("u-2.a-mod9", "a(q) = f1^3/f3 (mod 9)", expr(T(1, 0, a())),
                expr(T(1, 0, E(f1=3, f3=-1))), modulus=9),
    ]


def _power_of_three_steps() -> list[IdentityRecord]:
    d2 = expr(T(1, 0, dk(2)))
    d2_3n2 = expr(T(1, 0, dk(2, 3, 2)))
    d2_9n8 = expr(T(1, 0, dk(2, 9, 8)))
    d2_27n17 = expr(T(1, 0, dk(2, 27, 17)))
    d2_81n71 = expr(T(1, 0, dk(2, 81, 71)))
    d2_243n71 = expr(T(1, 0, dk(2, 243, 71)))
    step3_head = (
        T(6, 0, E(f3=5, f6=2, f1=-12)),
        T(27, 0, E(f2=1, f3=12, f1=-17, f6=-1)),
        T(243, 1, E(f3=17, f6=2, f1=-24)),
        T(486, 1, E(f2=1, f3=12, f9=3, f1=-20, f6=-1)),
    )
    step11_head = (
        T(540, 0, a(1, 75), E(f2=2, f3=6, f1=-1)),
        T(-54, 0, a(1, 3), E(f1=7, f6=4, f2=-2, f3=-2)),
    )
    return [
        _record("eq-2.10", "(2.10)", d2, expr(T(1, 0, E(f2=2, f1=-7)))),
        _record("eq-2.11", "(2.11)", d2_3n2,
                expr(T(27, 0, a(1, 2), E(f2=1, f3=14, f1=-23, f6=-1)),
                     T(6, 0, a(1, 3), E(f3=8, f6=2, f1=-21)),
                     T(81, 1, E(f3=17, f6=2, f1=-24)))),
        _record("eq-2.12", "(2.12)", d2_3n2,
                expr(*step3_head, T(2187, 2, E(f2=1, f3=12, f9=6, f1=-23, f6=-1)))),
        _record("eq-2.13", "(2.13)", d2_3n2, expr(*step3_head), modulus=729),
        _record("eq-2.13b", "(2.13), second line", d2_3n2,
                expr(T(6, 0, E(f1=231, f6=2, f3=-76)),
                     T(27, 0, E(f1=10, f2=1, f3=3, f6=-1)),
                     T(243, 1, E(f3=9, f6=2)),
                     T(486, 1, E(f1=1, f2=1, f3=5, f9=3, f6=-1))),
                modulus=729, order=HEAVY),
        _record("eq-2.14", "(2.14)", expr(T(1, 0, E(f1=231))),
                expr(T(1, 0, a(3, 77), E(f3=77)),
                     T(12, 1, a(3, 76), E(f3=76, f9=3)),
                     T(90, 2, a(3, 75), E(f3=75, f9=6)),
                     T(54, 3, a(3, 74), E(f3=74, f9=9)),
                     T(162, 4, a(3, 73), E(f3=73, f9=12))),
                modulus=243, order=HEAVY),
        _record("eq-2.15", "(2.15)", expr(T(1, 0, E(f1=10, f2=1))),
                expr(T(18, 3, a(3, 2), E(f3=3, f9=1, f18=4, f6=-1)),
                     T(9, 2, a(3, 2), E(f3=2, f9=4, f18=1)),
                     T(-2, 2, a(3, 3), E(f3=4, f18=4, f6=-1, f9=-2)),
                     T(-9, 1, a(3, 2), E(f3=1, f6=1, f9=7, f18=-2)),
                     T(-1, 1, a(3, 3), E(f3=3, f9=1, f18=1)),
                     T(1, 0, a(3, 3), E(f3=2, f6=1, f9=4, f18=-2))),
                modulus=27),
        _record("eq-2.16", "(2.16)", d2_9n8,
                expr(*step11_head, T(-243, 0, a(1, 2), E(f1=5, f3=4, f6=1, f2=-1))),
                modulus=729, order=HEAVY),
        _record("eq-2.16b", "(2.16), second line", d2_9n8,
                expr(*step11_head, T(-243, 0, E(f1=2, f3=5, f6=1, f2=-1))),
                modulus=729, order=HEAVY),
        _record("u-2.b", "sec. 2, d2(9n+8) mod 243 via a(q)", d2_9n8,
                expr(T(54, 0, a(1, 75), E(f2=2, f3=6, f1=-1)),
                     T(-54, 0, a(1, 3), E(f1=7, f6=4, f2=-2, f3=-2))),
                modulus=243, order=HEAVY),
        _record("u-2.c", "sec. 2, d2(9n+8) mod 243 as eta quotients", d2_9n8,
                expr(T(540, 0, E(f2=2, f3=12, f1=-19)),
                     T(-54, 0, E(f1=7, f6=4, f2=-2, f3=-2))),
                modulus=243),
        _record("u-2.d", "sec. 2, d2(9n+8) mod 243 factored", d2_9n8,
                expr(T(54, 0, E(f2=2, f3=6, f1=-1)),
                     T(-54, 0, E(f1=7, f6=4, f2=-2, f3=-2))),
                modulus=243),
        _record("eq-2.17", "(2.17)", d2_9n8,
                expr(T(432, 1, E(f1=2, f6=9, f2=-1, f3=-3))), modulus=243),
        _record("eq-2.17b", "(2.17), second form", d2_9n8,
                expr(T(432, 1, E(f6=9, f9=2, f3=-3, f18=-1)),
                     T(-864, 2, E(f6=8, f18=2, f3=-2, f9=-1))),
                modulus=243),
        _record("eq-2.18", "(2.18)", expr(T(1, 0, dk(2, 27, 8))), ZERO, modulus=243, order=60),
        _record("eq-2.19", "(2.19)", expr(T(1, 0, a(1, 75), E(f2=2, f3=6, f1=-1))),
                expr(T(18, 2, a(3, 74), E(f3=5, f9=2, f18=2)),
                     T(1, 1, a(3, 75), E(f3=6, f18=2, f9=-1)),
                     T(18, 1, a(3, 74), E(f3=4, f6=1, f9=5, f18=-1)),
                     T(1, 0, a(3, 75), E(f3=5, f6=1, f9=2, f18=-1))),
                modulus=27, order=HEAVY),
        _record("eq-2.20", "(2.20)", expr(T(1, 0, a(1, 3), E(f1=7, f6=4, f2=-2, f3=-2))),
                expr(T(9, 4, a(3, 3), E(f3=2, f9=3, f18=6, f6=-4)),
                     T(-9, 3, a(3, 3), E(f3=1, f9=6, f18=3, f6=-3)),
                     T(12, 3, a(3, 4), E(f3=3, f18=6, f6=-4)),
                     T(9, 2, a(3, 3), E(f9=9, f6=-2)),
                     T(-12, 2, a(3, 4), E(f3=2, f9=3, f18=3, f6=-3)),
                     T(1, 2, a(3, 5), E(f3=4, f18=6, f6=-4, f9=-3)),
                     T(12, 1, a(3, 4), E(f3=1, f9=6, f6=-2)),
                     T(-1, 1, a(3, 5), E(f3=3, f18=3, f6=-3)),
                     T(1, 0, a(3, 5), E(f3=2, f9=3, f6=-2))),
                modulus=27),
        _record("eq-2.21", "(2.21)", d2_27n17,
                expr(T(540, 0, a(1, 75), E(f1=6, f6=2, f3=-1)),
                     T(9720, 0, a(1, 74), E(f1=4, f2=1, f3=5, f6=-1)),
                     T(-648, 0, a(1, 4), E(f1=1, f3=6, f2=-2)),
                     T(-243, 0, a(1, 3), E(f1=6, f6=2, f3=-1)),
                     T(54, 0, a(1, 5), E(f1=3, f6=3, f2=-3)),
                     T(-486, 1, a(1, 3), E(f1=2, f3=3, f6=6, f2=-4))),
                modulus=729, order=HEAVY),
        _record("eq-2.21b", "(2.21), second form", d2_27n17,
                expr(T(540, 0, a(1, 75), E(f1=6, f6=2, f3=-1)),
                     T(9720, 0, E(f1=1, f2=1, f3=6, f6=-1)),
                     T(-648, 0, a(), E(f1=1, f3=6, f2=-2)),
                     T(-243, 0, E(f3=1, f6=2)),
                     T(54, 0, a(1, 5), E(f1=3, f6=3, f2=-3)),
                     T(-486, 1, E(f1=2, f3=3, f6=5, f2=-1))),
                modulus=729, order=HEAVY),
        _record("u-2.e", "(2.22)", d2_27n17,
                expr(T(54, 0, a(1, 75), E(f1=6, f6=2, f3=-1)),
                     T(54, 0, a(1, 5), E(f1=3, f6=3, f2=-3))),
                modulus=81, order=HEAVY),
        _record("u-2.f", "(2.22), second form", d2_27n17, expr(T(27, 0, E(f3=1, f6=2))), modulus=81),
        _record("u-2.g", "sec. 2, first helper 3-dissection", expr(T(1, 0, a(1, 75), E(f1=6, f6=2, f3=-1))),
                expr(T(1, 0, a(3, 77), E(f3=1, f6=2)),
                     T(12, 1, a(3, 76), E(f6=2, f9=3)),
                     T(9, 2, a(3, 75), E(f6=2, f9=6, f3=-1))),
                modulus=27, order=HEAVY),
        _record("u-2.h", "sec. 2, second helper 3-dissection", expr(T(1, 0, a(), E(f1=1, f3=6, f2=-2))),
                expr(T(1, 0, a(3), E(f3=8, f9=3, f6=-6)),
                     T(6, 1, E(f3=7, f9=6, f6=-6)),
                     T(-1, 1, a(3), E(f3=9, f18=3, f6=-7)),
                     T(-6, 2, E(f3=8, f9=3, f18=3, f6=-7)),
                     T(1, 2, a(3), E(f3=10, f18=6, f6=-8, f9=-3)),
                     T(6, 3, E(f3=9, f18=6, f6=-8))),
                modulus=9),
        _record("u-2.i", "sec. 2, third helper 3-dissection", expr(T(1, 0, a(1, 5), E(f1=3, f6=3, f2=-3))),
                expr(T(1, 0, a(3, 7), E(f6=3, f9=9, f3=-10, f18=-3)),
                     T(6, 1, a(3, 6), E(f6=3, f9=12, f3=-11, f18=-3)),
                     T(-6, 1, a(3, 7), E(f6=2, f9=6, f3=-9)),
                     T(18, 2, a(3, 6), E(f6=2, f9=9, f3=-10)),
                     T(12, 2, a(3, 7), E(f6=1, f9=3, f18=3, f3=-8)),
                     T(18, 3, a(3, 6), E(f6=1, f9=6, f18=3, f3=-9)),
                     T(-8, 3, a(3, 7), E(f18=6, f3=-7)),
                     T(6, 4, a(3, 6), E(f9=3, f18=6, f3=-8))),
                modulus=27),
        _record("u-2.j", "sec. 2, d2(81n+71) mod 729 with a(q)", d2_81n71,
                expr(T(-2430, 0, E(f1=8, f3=3, f6=3, f2=-7)),
                     T(4860, 0, a(1, 75), E(f2=2, f3=6, f1=-1)),
                     T(648, 0, a(1, 7), E(f2=1, f3=3, f6=3, f1=-8)),
                     T(972, 0, a(1, 6), E(f2=2, f3=9, f1=-10)),
                     T(9720, 0, a(), E(f1=7, f6=4, f2=-2, f3=-2)),
                     T(-648, 0, a(), E(f1=10, f6=6, f2=-8, f3=-3)),
                     T(-486, 1, E(f1=11, f6=12, f2=-10, f3=-6))),
                modulus=729, order=HEAVY),
        _record("u-2.k", "sec. 2, d2(81n+71) mod 729 partly reduced", d2_81n71,
                expr(T(-2430, 0, E(f1=2, f3=5, f6=1, f2=-1)),
                     T(5832, 0, E(f2=2, f3=6, f1=-1)),
                     T(648, 0, a(), E(f2=1, f3=3, f6=3, f1=-8)),
                     T(9720, 0, E(f1=1, f6=4, f2=-2)),
                     T(-648, 0, a(), E(f1=1, f6=6, f2=-8)),
                     T(-486, 1, E(f1=2, f6=9, f2=-1, f3=-3))),
                modulus=729, order=HEAVY),
        _record("u-2.l", "sec. 2, d2(81n+71) mod 729 reduced", d2_81n71,
                expr(T(-2430, 0, E(f1=2, f3=5, f6=1, f2=-1)),
                     T(9720, 0, E(f1=1, f6=4, f2=-2)),
                     T(-486, 1, E(f1=2, f6=9, f2=-1, f3=-3))),
                modulus=729, order=HEAVY),
        _record("u-2.m", "(2.23)", expr(T(1, 0, dk(2, 81, 71))), ZERO, modulus=243, order=40),
        _record("u-2.n", "sec. 2, d2(81n+71) mod 729 dissected", d2_81n71,
                expr(T(-2430, 0, E(f3=5, f6=1, f9=2, f18=-1)),
                     T(9720, 0, E(f3=2, f9=3, f6=-2)),
                     T(-486, 1, E(f6=9, f9=2, f3=-3, f18=-1)),
                     T(4860, 1, E(f3=6, f18=2, f9=-1)),
                     T(-9720, 1, E(f3=3, f18=3, f6=-3)),
                     T(972, 2, E(f6=8, f18=2, f3=-2, f9=-1)),
                     T(9720, 2, E(f3=4, f18=6, f6=-4, f9=-3))),
                modulus=729, order=HEAVY),
        _record("u-2.o", "sec. 2, d2(243n+71) mod 729", d2_243n71,
                expr(T(-2430, 0, E(f1=5, f2=1, f3=2, f6=-1)),
                     T(9720, 0, E(f1=2, f3=3, f2=-2))),
                modulus=729, order=40),
        _record("u-2.p", "sec. 2, d2(243n+71) mod 729 collected", d2_243n71,
                expr(T(7290, 0, E(f1=2, f3=3, f2=-2))), modulus=729, order=40),
    ]


def _two_dissections_and_exact_forms() -> list[IdentityRecord]:
    records = [
        _record("eq-3.12", "(3.12)", expr(T(1, 0, E(f1=-2))),
                expr(T(1, 0, E(f8=5, f2=-5, f16=-2)), T(2, 1, E(f4=2, f16=2, f2=-5, f8=-1)))),
        _record("eq-3.15", "(3.15)", expr(T(1, 0, E(f1=2))),
                expr(T(1, 0, E(f2=1, f8=5, f4=-2, f16=-2)), T(-2, 1, E(f2=1, f16=2, f8=-1)))),
        _record("eq-3.16", "(3.16)", expr(T(1, 0, E(f1=-4))),
                expr(T(1, 0, E(f4=14, f2=-14, f8=-4)), T(4, 1, E(f4=2, f8=4, f2=-10)))),
    ]
    exact = [
        ("exact-3.11", "(3.11)", GenFunFamily.D4J3_4N2, lambda j: dk(4 * j + 3, 4, 2)),
        ("exact-3.13", "(3.13)", GenFunFamily.D4J3_4N3, lambda j: dk(4 * j + 3, 4, 3)),
        ("exact-3.14", "(3.14)", GenFunFamily.D8J7_4N2, lambda j: dk(8 * j + 7, 4, 2)),
        ("exact-3.15", "(3.15) of sec. 3 families", GenFunFamily.D8J7_4N3, lambda j: dk(8 * j + 7, 4, 3)),
        ("exact-4.combined", "sec. 4, unseparated form", GenFunFamily.D16J15_4N3, lambda j: dk(16 * j + 15, 4, 3)),
    ]
    for id_, location, family, progression in exact:
        for j in (0, 1):
            records.append(
                _record(f"{id_}-j{j}", f"{location}, j={j}", expr(T(1, 0, progression(j))),
                        expr(T(1, 0, genfun(family, j))), order=100)
            )
    for j in (0, 1):
        records.append(
            _record(f"exact-4.separated-j{j}", f"sec. 4, separated form, j={j}",
                    expr(T(1, 0, dk(16 * j + 15, 4, 3))),
                    expr(T(1, 0, genfun(GenFunFamily.D16J15_4N3, j, GenFunReading.SEPARATED_DERIVED))),
                    order=100)
        )
    return records


def _j_parameterized() -> list[IdentityRecord]:
    records = []
    for j in (0, 1):
        records += [
            _record(f"u-3.a-j{j}", f"sec. 3, d_(32j+7)(n) mod 8, j={j}",
                    expr(T(1, 0, dk(32 * j + 7))),
                    expr(T(1, 0, E(f1=2, f2=-(16 * j + 5)))), modulus=8),
            _record(f"u-3.b-j{j}", f"sec. 3, d_(32j+7)(2n) mod 8, j={j}",
                    expr(T(1, 0, dk(32 * j + 7, 2, 0))),
                    expr(T(1, 0, E(f4=19, f2=-(8 * j + 16), f8=-6)),
                         T(4, 1, E(f4=7, f8=2, f2=-(8 * j + 12)))),
                    modulus=8),
            _record(f"u-3.c-j{j}", f"sec. 3, d_(32j+7)(4n) mod 8, j={j}",
                    expr(T(1, 0, dk(32 * j + 7, 4, 0))),
                    expr(T(1, 0, E(f2=19, f1=-(8 * j + 16), f4=-6))), modulus=8),
            _record(f"u-3.d-j{j}", f"sec. 3, d_(32j+7)(4n) mod 8 reduced, j={j}",
                    expr(T(1, 0, dk(32 * j + 7, 4, 0))),
                    expr(T(1, 0, E(f2=11 - 4 * j, f4=-6))), modulus=8),
            _record(f"u-3.e-j{j}", f"sec. 3, d_(9j+8)(n) mod 9, j={j}",
                    expr(T(1, 0, dk(9 * j + 8))),
                    expr(T(1, 0, E(f6=3 * j + 3, f3=-(9 * j + 9), f9=2, f18=-1)),
                         T(-2, 1, E(f6=3 * j + 2, f3=-(9 * j + 8), f18=2, f9=-1))),
                    modulus=9),
            _record(f"u-3.f-j{j}", f"sec. 3, d_(9j+8)(3n) mod 9, j={j}",
                    expr(T(1, 0, dk(9 * j + 8, 3, 0))),
                    expr(T(1, 0, E(f2=3 * j + 3, f3=-(3 * j + 1), f6=-1))), modulus=9),
            _record(f"u-3.g-j{j}", f"sec. 3, d_(27j+2)(3n+2) mod 27, j={j}",
                    expr(T(1, 0, dk(27 * j + 2, 3, 2))),
                    expr(T(6, 0, E(f6=3 * j + 2, f3=2 - 9 * j, f1=-3))), modulus=27),
            _record(f"u-4.a-j{j}", f"sec. 4, d_(32j+31)(4n+3) mod 128, j={j}",
                    expr(T(1, 0, dk(32 * j + 31, 4, 3))),
                    expr(T(96 * (48 * j + 47) * (32 * j + 33) * (j + 1), 0,
                           E(f2=604 * j + 577, f4=-(304 * j + 286)))),
                    modulus=128, order=100),
        ]
    return records


def _rogers_ramanujan() -> list[IdentityRecord]:
    R5 = lambda e: R(5, e)  # noqa: E731
    p25 = _record("eq-6.p25", "sec. 6, relation for P(2,5)", expr(T(1, 0, P(2, 5))),
                  expr(T(1, 0, P(0, 1), P(2, 4)), T(1, 0, P(2, 3))))
    return [
        p25,
        _printed(p25, expr(T(1, 0, P(0, 1), P(2, 4)), T(-1, 0, P(2, 3))),
                 "printed with -P(2,3); P(0,1) P(2,4) expands to P(2,5) - P(2,3)"),
        _record("eq-6.22", "(6.22)", expr(T(1, 0, E(f1=1))),
                expr(T(1, 0, E(f25=1), R5(-1)), T(-1, 1, E(f25=1)), T(-1, 2, E(f25=1), R5(1)))),
        _record("eq-6.23", "(6.23)", expr(T(1, 0, E(f1=-1))),
                expr(*(T(c, i, E(f25=5, f5=-6), *((R5(e),) if e else ()))
                       for i, (c, e) in enumerate([(1, -4), (1, -3), (2, -2), (3, -1), (5, 0),
                                                   (-3, 1), (2, 2), (-1, 3), (1, 4)])))),
        _record("eq-6.24", "(6.24)", expr(T(1, 0, dk(1, 5, 3))),
                expr(T(-4, 0, E(f5=20, f10=1, f1=-24), P(3, 6)),
                     T(40, 0, E(f5=20, f10=1, f1=-24), P(3, 5)),
                     T(-105, 1, E(f5=20, f10=1, f1=-24), P(2, 5)),
                     T(-418, 1, E(f5=20, f10=1, f1=-24), P(2, 4)),
                     T(1100, 1, E(f5=20, f10=1, f1=-24), P(2, 3)),
                     T(-1400, 2, E(f5=20, f10=1, f1=-24), P(1, 3)),
                     T(-1840, 2, E(f5=20, f10=1, f1=-24), P(1, 2)),
                     T(1200, 2, E(f5=20, f10=1, f1=-24), P(1, 1)),
                     T(-1500, 3, E(f5=20, f10=1, f1=-24), P(0, 1)),
                     T(-1015, 3, E(f5=20, f10=1, f1=-24)))),
        _record("eq-6.25", "(6.25)", expr(T(1, 0, P(0, 1))),
                expr(T(4, 1, E(f1=1, f10=5, f2=-1, f5=-5)))),
        _record("eq-6.26", "(6.26)", expr(T(1, 0, P(1, 1))),
                expr(T(1, 0, E(f2=1, f5=5, f1=-1, f10=-5)), T(2, 1), T(4, 2, E(f1=1, f10=5, f2=-1, f5=-5)))),
        _record("eq-6.27", "(6.27)", expr(T(1, 0, P(1, 2))),
                expr(T(1, 0, E(f1=6, f5=-6)), T(11, 1))),
        _record("eq-6.p13", "sec. 6, relation for P(1,3)", expr(T(1, 0, P(1, 3))),
                expr(T(1, 0, P(0, 1), P(1, 2)), T(1, 0, P(1, 1)))),
        _record("eq-6.p23", "sec. 6, relation for P(2,3)", expr(T(1, 0, P(2, 3))),
                expr(T(1, 0, P(1, 1), P(1, 2)), T(-1, 2, P(0, 1)))),
        _record("eq-6.p24", "sec. 6, relation for P(2,4)", expr(T(1, 0, P(2, 4))),
                expr(T(1, 0, P(1, 2), P(1, 2)), T(2, 2))),
        _record("eq-6.p35", "sec. 6, relation for P(3,5)", expr(T(1, 0, P(3, 5))),
                expr(T(1, 0, P(1, 1), P(2, 4)), T(-1, 2, P(1, 3)))),
        _record("eq-6.p36", "sec. 6, relation for P(3,6)", expr(T(1, 0, P(3, 6))),
                expr(T(1, 0, P(1, 2), P(2, 4)), T(1, 2, P(1, 2)))),
        _record("u-6.a", "sec. 6, d1(5n+3) as ten eta quotients", expr(T(1, 0, dk(1, 5, 3))),
                expr(T(40, 0, E(f2=1, f5=13, f1=-13, f10=-4)),
                     T(-4, 0, E(f10=1, f5=2, f1=-6)),
                     T(-470, 1, E(f10=1, f5=8, f1=-12)),
                     T(1875, 1, E(f2=1, f5=19, f1=-19, f10=-4)),
                     T(15625, 2, E(f2=1, f5=25, f1=-25, f10=-4)),
                     T(-8750, 2, E(f10=1, f5=14, f1=-18)),
                     T(-260, 2, E(f10=6, f5=3, f1=-11, f2=-1)),
                     T(-7500, 3, E(f10=6, f5=9, f1=-17, f2=-1)),
                     T(-46875, 3, E(f10=1, f5=20, f1=-24)),
                     T(-62500, 4, E(f10=6, f5=15, f1=-23, f2=-1)))),
        _record("u-6.b", "sec. 6, d1(5n+3) mod 5", expr(T(1, 0, dk(1, 5, 3))),
                expr(T(-4, 0, E(f10=1, f5=2, f1=-6))), modulus=5),
        _record("u-6.c", "sec. 6, d1(5n+3) mod 5 reduced", expr(T(1, 0, dk(1, 5, 3))),
                expr(T(1, 0, E(f10=1, f5=1, f1=-1))), modulus=5),
        _record("u-6.d", "(6.1) as a vanishing progression", expr(T(1, 0, dk(1, 25, 23))), ZERO,
                modulus=5, order=100),
    ]


def _seven_and_theta() -> list[IdentityRecord]:
    d2_7n1 = _record("eq-6.30", "(6.30)", expr(T(1, 0, dk(2, 7, 1))), expr(T(1, 1, E(f14=2, f1=-1))), modulus=7)
    return [
        d2_7n1,
        _printed(d2_7n1, expr(T(1, 0, E(f14=2, f1=-1))),
                 "printed without the factor q; d2(1) = 7 while f14^2/f1 starts at 1"),
        _record("eq-6.7dis", "sec. 6, 7-dissection of f1", expr(T(1, 0, E(f1=1))),
                expr(T(1, 0, E(f49=1), poch(14, 49), poch(35, 49), poch(7, 49, -1), poch(42, 49, -1)),
                     T(-1, 1, E(f49=1), poch(21, 49), poch(28, 49), poch(14, 49, -1), poch(35, 49, -1)),
                     T(-1, 2, E(f49=1)),
                     T(1, 5, E(f49=1), poch(7, 49), poch(42, 49), poch(21, 49, -1), poch(28, 49, -1)))),
        _record("eq-6.29", "(6.29)", expr(T(1, 0, dk(2))), expr(T(1, 0, E(f2=2, f7=-1))), modulus=7),
        _record("eq-6.31", "(6.31)", expr(T(1, 0, E(f1=3))), expr(T(1, 0, theta("jacobi_cube")))),
        _record("eq-6.32", "(6.32)", expr(T(1, 0, E(f2=2, f1=-1))), expr(T(1, 0, theta("triangular")))),
        _record("eq-6.33", "(6.33)", expr(T(1, 0, E(f2=5, f1=-2))), expr(T(1, 0, theta("f25_over_f12")))),
        _record("u-6.e", "sec. 6, d3 mod 13", expr(T(1, 0, dk(3))),
                expr(T(1, 0, E(f1=3, f2=3, f13=-1))), modulus=13),
        _record("u-6.f", "sec. 6, d3 mod 13 as a double theta sum", expr(T(1, 0, dk(3))),
                expr(T(1, 0, E(f13=-1), theta("jacobi_cube"), theta("jacobi_cube", 2))), modulus=13),
        _record("u-6.g", "sec. 6, d3(13n+11) vanishes mod 13", expr(T(1, 0, dk(3, 13, 11))), ZERO,
                modulus=13, order=100),
        _record("u-6.h", "sec. 6, d5 mod 17 theta bridge", expr(T(1, 0, dk(5))),
                expr(T(1, 0, E(f17=-1), theta("jacobi_cube"), theta("f25_over_f12"))), modulus=17),
        _record("u-6.i", "sec. 6, d6 mod 19 theta bridge", expr(T(1, 0, dk(6))),
                expr(T(1, 0, E(f19=-1), theta("jacobi_cube", 2, 2))), modulus=19),
        _record("u-6.j", "sec. 6, d7 mod 19 theta bridge", expr(T(1, 0, dk(7))),
                expr(T(1, 0, E(f19=-1), theta("triangular"), theta("f25_over_f12"))), modulus=19),
        _record("u-6.k", "sec. 6, d8 mod 23 theta bridge", expr(T(1, 0, dk(8))),
                expr(T(1, 0, E(f23=-1), theta("f25_over_f12"), theta("jacobi_cube", 2))), modulus=23),
        _record("eq-6.39", "(6.39)", expr(T(1, 0, dk(1))),
                expr(T(1, 0, E(f1=21, f2=1, f5=-5))), modulus=25),
    ]


class IdentityRegistry:
    def __init__(self, records: Optional[Iterable[IdentityRecord]] = None):
        if records is None:
            records = (
                _three_dissections() + _power_of_three_steps() + _two_dissections_and_exact_forms()
                + _j_parameterized() + _rogers_ramanujan() + _seven_and_theta()
            )
        self._records: dict[str, IdentityRecord] = {}
        for record in records:
            if record.id in self._records:
                raise ValueError(f"duplicate identity id {record.id}")
            self._records[record.id] = record

    def __len__(self) -> int:
        return len(self._records)

    def get(self, id_: str) -> IdentityRecord:
        try:
            return self._records[id_]
        except KeyError:
            raise UnknownIdentityError(id_) from None

    def list_registry(self) -> list[tuple[str, str, Optional[int]]]:
        return [(r.id, r.location, r.modulus) for r in self.records()]

    def records(self, pattern: Optional[str] = None) -> list[IdentityRecord]:
        """All records, or those whose id matches a glob pattern such as "eq-6.2*"."""
        chosen = sorted(self._records.values(), key=lambda r: r.id)
        if pattern:
            chosen = [r for r in chosen if fnmatchcase(r.id, pattern)]
        return chosen

    def export(self) -> list[dict]:
        return [
            {"id": r.id, "location": r.location, "modulus": r.modulus,
             "default_order": r.default_order, "identity": r.describe(),
             "expect_verified": r.expect_verified, "note": r.note}
            for r in self.records()
        ]

    def verify_record(self, record: IdentityRecord, order: Optional[int] = None) -> IdentityCheck:
        order = order or record.default_order
        if order < 2:
            raise ValueError("identities are compared to order >= 2")
        evaluator = Evaluator(order, record.modulus)
        lhs = evaluator.evaluate(record.lhs)
        rhs = evaluator.evaluate(record.rhs)
        mismatch = first_mismatch(lhs, rhs)

        reduced_modulus = reduced_ok = None
        if record.modulus is not None:
            p = primefactors(record.modulus)[0]
            if record.modulus // p >= 2:
                reduced_modulus = record.modulus // p
                reduced_ok = first_mismatch(
                    reduce_mod(lhs, reduced_modulus), reduce_mod(rhs, reduced_modulus)
                ) is None
        logger.info("identity %s at order %d: mismatch=%s", record.id, order, mismatch)
        return IdentityCheck(
            id=record.id,
            location=record.location,
            order=order,
            modulus=record.modulus,
            verified=mismatch is None and reduced_ok is not False,
            first_mismatch=mismatch,
            reduced_modulus=reduced_modulus,
            reduced_verified=reduced_ok,
            expect_verified=record.expect_verified,
        )

    def verify_identity(self, id_: str, order: Optional[int] = None) -> IdentityCheck:
        return self.verify_record(self.get(id_), order)

    def compare_separated_readings(self, j: int, order: int = 100) -> list[tuple[GenFunReading, Optional[int]]]:
        """Each reading of the separated d_{16j+15}(4n+3) display against 4-dissection of d_k.

        Pairs every reading with its first mismatching index, or None where it agrees.
        """
        target = extracted_genfun(BinomialGenFun(family=GenFunFamily.D16J15_4N3, j=j), order)
        outcome = []
        for reading in GenFunReading:
            spec = BinomialGenFun(family=GenFunFamily.D16J15_4N3, j=j, reading=reading)
            mismatch = first_mismatch(exact_genfun(spec, order), target)
            logger.info("reading %s at j=%d: mismatch=%s", reading.value, j, mismatch)
            outcome.append((reading, mismatch))
        return outcome
