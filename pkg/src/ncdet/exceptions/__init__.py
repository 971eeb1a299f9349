"""Exception hierarchy. ``exit_code`` is what the CLI returns for each error."""
from __future__ import annotations


class NcdetError(Exception):
    exit_code = 2


class UnknownLabelError(NcdetError, KeyError):
    def __init__(self, label, axis: str = "row"):
        self.label = label
        self.axis = axis
        super().__init__(f"unknown {axis} label: {label}")

    def __str__(self):
        return self.args[0]


class DimensionMismatchError(NcdetError, ValueError):
    pass


class UnsupportedScalarError(NcdetError, TypeError):
    pass


class CapExceededError(NcdetError, ValueError):
    def __init__(self, what: str, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"{what}: n={n} exceeds the cap n<={cap}")


class SingularMatrixError(NcdetError, ArithmeticError):
    exit_code = 1


class QuasidetUndefinedError(NcdetError, ArithmeticError):
    exit_code = 1

    def __init__(self, row, col, reason: str = "A^{ij} not invertible", depth: int | None = None):
        self.row = row
        self.col = col
        self.reason = reason
        self.depth = depth
        where = f"|A|_{{{row},{col}}}" if depth is None else f"factor {depth} |.|_{{{row},{col}}}"
        super().__init__(f"undefined: {reason} ({where})")


class DegenerateStreamError(NcdetError, RuntimeError):
    exit_code = 1

    def __init__(self, seed: int, attempts: int):
        self.seed = seed
        self.attempts = attempts
        super().__init__(f"no generic sample after {attempts} attempts (seed={seed})")


class MatrixFileError(NcdetError, ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field {field}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
