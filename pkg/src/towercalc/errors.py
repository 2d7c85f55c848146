"""Exception types raised across towercalc."""


class TowerError(ValueError):
    """Base class for every error raised by this package."""


class BasisMismatch(TowerError):
    def __init__(self, detail: str = ""):
        msg = "basis mismatch"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PreconditionError(TowerError):
    pass


class NotACurveBlowup(TowerError):
    def __init__(self):
        super().__init__("not a curve blowup")


class EvidenceMismatch(TowerError):
    def __init__(self, detail: str = ""):
        msg = "evidence mismatch"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EnumerationBoundExceeded(TowerError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"enumeration bound exceeded: {n} curves > {bound}")


class ShapeMismatch(TowerError):
    def __init__(self, detail: str = ""):
        msg = "shape mismatch"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ScriptParseError(TowerError):
    """Malformed tower script; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ExpressionError(TowerError):
    pass
