from typing import Optional

from domain.errors import ClaimSyntaxError
from domain.models import CongruenceClaim, RaduTuple


class _Cursor:
    """Recursive-descent reader over one claim string; whitespace is insignificant."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str) -> ClaimSyntaxError:
        return ClaimSyntaxError(message, self.text, self.pos)

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str) -> bool:
        self.skip_space()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.peek() or "end of input"
            raise self.fail(f"expected {token!r}, found {found!r}")

    def integer(self, signed: bool = False) -> int:
        self.skip_space()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits.lstrip("+-"):
            self.pos = start
            raise self.fail("expected an integer")
        return int(digits)

    def optional_integer(self) -> Optional[int]:
        return self.integer() if self.peek().isdigit() else None

    def end(self) -> None:
        self.skip_space()
        if self.pos != len(self.text):
            raise self.fail(f"unexpected trailing input {self.text[self.pos:]!r}")


def _linear(cursor: _Cursor, variable: str) -> tuple[int, int, bool]:
    """Reads 'c v + b', 'v + b', 'c v' or a bare 'b'; returns (c, b, saw_variable)."""
    coefficient = cursor.optional_integer()
    if cursor.accept(variable):
        step = 1 if coefficient is None else coefficient
        offset = cursor.integer() if cursor.accept("+") else 0
        return step, offset, True
    if coefficient is None:
        raise cursor.fail(f"expected an integer or {variable!r}")
    return 0, coefficient, False


class ClaimParser:
    @staticmethod
    def parse_k_expression(text: str) -> tuple[int, int]:
        """'8j+7' -> (8, 7); '2' -> (0, 2)."""
        cursor = _Cursor(text)
        step, base, _ = _linear(cursor, "j")
        cursor.end()
        return step, base

    @staticmethod
    def parse_progression(text: str) -> tuple[int, int]:
        """'81n+44' -> (81, 44)."""
        cursor = _Cursor(text)
        A, B, saw_n = _linear(cursor, "n")
        if not saw_n:
            raise cursor.fail("a progression needs the variable 'n'")
        cursor.end()
        return A, B

    @staticmethod
    def parse_claim(text: str) -> CongruenceClaim:
        """Grammar: d[k_step j + k_base](A n + B) = 0 mod M."""
        cursor = _Cursor(text)
        cursor.expect("d")
        cursor.expect("[")
        k_at = cursor.pos
        k_step, k_base, _ = _linear(cursor, "j")
        cursor.expect("]")
        cursor.expect("(")
        progression_at = cursor.pos
        A, B, saw_n = _linear(cursor, "n")
        if not saw_n:
            raise cursor.fail("a progression needs the variable 'n'")
        cursor.expect(")")
        if not (cursor.accept("==") or cursor.accept("=")):
            raise cursor.fail("expected '='")
        zero_at = cursor.pos
        if cursor.integer() != 0:
            cursor.pos = zero_at
            raise cursor.fail("claims assert vanishing, the right side must be 0")
        cursor.expect("mod")
        modulus_at = cursor.pos
        modulus = cursor.integer()
        cursor.end()

        if B >= A:
            raise ClaimSyntaxError(f"offset {B} must be smaller than {A}", text, progression_at)
        if modulus < 2:
            raise ClaimSyntaxError("the modulus must be >= 2", text, modulus_at)
        if k_step == 0 and k_base < 1:
            raise ClaimSyntaxError("d_k needs k >= 1", text, k_at)
        return CongruenceClaim(k_step=k_step, k_base=k_base, A=A, B=B, modulus=modulus)

    @staticmethod
    def parse_vector(text: str) -> tuple[int, ...]:
        cursor = _Cursor(text)
        vector = _vector(cursor)
        cursor.end()
        return vector

    @staticmethod
    def parse_radu_tuple(text: str, r_prime: str) -> RaduTuple:
        """'(m,M,N,t,(r...))' plus the r' vector '(r'...)'."""
        cursor = _Cursor(text)
        cursor.expect("(")
        numbers = []
        for _ in range(4):
            numbers.append(cursor.integer())
            cursor.expect(",")
        r = _vector(cursor)
        cursor.expect(")")
        cursor.end()
        m, M, N, t = numbers
        r_prime_vector = ClaimParser.parse_vector(r_prime)
        try:
            return RaduTuple.from_chart(m, M, N, t, r, r_prime_vector)
        except ValueError as exc:
            raise ClaimSyntaxError(str(exc), text, 0) from exc


def _vector(cursor: _Cursor) -> tuple[int, ...]:
    cursor.expect("(")
    values = [cursor.integer(signed=True)]
    while cursor.accept(","):
        values.append(cursor.integer(signed=True))
    cursor.expect(")")
    return tuple(values)
