from typing import Iterable, Optional

from domain.models import CatalogueRow, CongruenceClaim


def _row(tag: str, k_step: int, k_base: int, A: int, B: int, modulus: int,
         n_max: int, j_max: int = 0, expect: bool = True, note: str = "") -> CatalogueRow:
    claim = CongruenceClaim(k_step=k_step, k_base=k_base, A=A, B=B, modulus=modulus)
    return CatalogueRow(
        tag=tag,
        claim=claim,
        n_max=n_max,
        j_max=j_max if k_step else 0,
        expect_verified=expect,
        note=note,
    )


def _expand(tag: str, residues: Iterable[int], **kwargs) -> list[CatalogueRow]:
    return [_row(f"{tag}-{b}", B=b, **kwargs) for b in residues]


def _ternary_rows() -> list[CatalogueRow]:
    return [
        _row("1.2", 0, 2, 81, 44, 81, n_max=30),
        *_expand("1.3", (8, 35, 62, 71), k_step=0, k_base=2, A=81, modulus=243, n_max=30),
        _row("1.4", 0, 2, 243, 71, 729, n_max=12),
        _row("step-27n+8", 0, 2, 27, 8, 243, n_max=30, note="intermediate step"),
        _row("step-81n+71", 0, 2, 81, 71, 243, n_max=30, note="intermediate step"),
    ]


def _family_rows() -> list[CatalogueRow]:
    table = [
        ("3.1", 4, 3, 4, 2, 2),
        ("3.2", 4, 3, 4, 3, 4),
        ("3.3", 8, 7, 4, 2, 4),
        ("3.4", 8, 7, 8, 5, 4),
        ("3.6", 8, 7, 4, 3, 8),
        ("3.7", 32, 7, 8, 4, 8),
        ("3.8", 9, 8, 9, 3, 9),
        ("3.9", 27, 2, 9, 8, 27),
        ("3.10", 243, 2, 27, 8, 243),
        ("4.1", 8, 7, 8, 6, 8),
        ("4.2", 8, 7, 8, 7, 16),
        ("4.3", 16, 7, 8, 6, 16),
        ("4.4", 16, 7, 16, 11, 16),
        ("4.5", 16, 15, 4, 3, 16),
        ("4.6", 16, 15, 8, 6, 16),
        ("4.7", 16, 15, 16, 10, 16),
        ("4.8", 32, 31, 4, 3, 32),
        ("4.9", 16, 15, 8, 7, 64),
        ("4.10", 32, 31, 8, 7, 128),
    ]
    rows = [_row(tag, step, base, A, B, mod, n_max=20, j_max=3) for tag, step, base, A, B, mod in table]
    rows += [
        _row("lift-64j+7", 64, 7, 8, 7, 16, n_max=20, j_max=3, note="lifted by the extension theorem"),
        _row("3.5", 16, 3, 16, 9, 4, n_max=20, j_max=3, expect=False,
             note="d3(9) = 384370 is 2 mod 4"),
        *_expand("16j+3", (3, 7, 11, 15), k_step=16, k_base=3, A=16, modulus=4, n_max=20, j_max=3,
                 note="the residues 3 mod 4 of 16n + B, inside d_{4j+3}(4n+3) = 0 mod 4"),
        _row("odd-d7", 0, 7, 2, 1, 16, n_max=20, expect=False,
             note="d7(2n+1) is not 0 mod 16; no family follows from p n + r alone"),
        _row("classical-3j+2", 3, 2, 3, 2, 3, n_max=20, j_max=3),
    ]
    return rows


def _sporadic_rows() -> list[CatalogueRow]:
    single = dict(k_step=0, n_max=10)
    return [
        _row("6.1", 0, 1, 25, 23, 5, n_max=10),
        *_expand("6.2", (23, 123), k_base=1, A=125, modulus=25, **single),
        *_expand("6.3", (97, 122), k_base=2, A=125, modulus=5, **single),
        *_expand("6.4", (17, 31, 38, 45), k_base=1, A=49, modulus=7, **single),
        _row("6.5", 0, 2, 49, 43, 7, n_max=10),
        _row("6.6", 0, 3, 49, 41, 7, n_max=10),
        *_expand("6.7", (90, 188, 237), k_base=3, A=343, modulus=49, **single),
        *_expand("6.8", (39, 235, 284), k_base=4, A=343, modulus=7, **single),
        _row("6.9", 0, 4, 121, 96, 11, n_max=10),
        _row("6.10", 0, 5, 121, 91, 11, n_max=10),
        _row("6.11", 0, 7, 121, 81, 11, n_max=10),
        _row("6.12", 13, 3, 13, 11, 13, n_max=10, j_max=2),
        _row("6.13", 17, 5, 17, 13, 17, n_max=10, j_max=2),
        *_expand("6.14", (52, 69, 137, 171, 188, 205, 222, 239, 273), k_base=6, A=289, modulus=17, **single),
        _row("6.15", 19, 3, 19, 16, 19, n_max=10, j_max=2),
        _row("6.16", 19, 6, 19, 9, 19, n_max=10, j_max=2),
        _row("6.17", 19, 7, 19, 13, 19, n_max=10, j_max=2),
        _row("6.18", 23, 8, 23, 9, 23, n_max=10, j_max=2),
        _row("step-13n+11", 0, 3, 13, 11, 13, n_max=30, note="j = 0 member of 6.12"),
    ]


CATALOGUE: list[CatalogueRow] = _ternary_rows() + _family_rows() + _sporadic_rows()


def catalogue_rows(prefix: Optional[str] = None) -> list[CatalogueRow]:
    """Rows whose tag equals prefix or starts with prefix followed by '-'."""
    if not prefix:
        return list(CATALOGUE)
    return [row for row in CATALOGUE if row.tag == prefix or row.tag.startswith(f"{prefix}-")]
