class RingMismatchError(ValueError):
    """Two series over different coefficient rings were combined."""


class NonUnitError(ArithmeticError):
    """Inversion of a series whose constant term is not a unit."""


class OrderCeilingError(ValueError):
    def __init__(self, order: int, ceiling: int):
        super().__init__(f"series order {order} exceeds the configured ceiling {ceiling}")
        self.order = order
        self.ceiling = ceiling


class UnsupportedLevelError(ValueError):
    """Neither N nor N/2 is square-free, so no double-coset representatives are known."""


class ClaimSyntaxError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        pointer = " " * column + "^"
        super().__init__(f"{message} at column {column}\n  {text}\n  {pointer}")
        self.text = text
        self.column = column


class UnknownIdentityError(KeyError):
    pass
