"""Exception hierarchy.

Every error carries a short ``category`` string and maps onto one CLI exit
status (see :data:`EXIT_CODES`).
"""

from __future__ import annotations


class FermNLTSError(Exception):
    category = "error"


class ParseError(FermNLTSError):
    category = "parse"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DimensionError(FermNLTSError, ValueError):
    category = "dimension"


class KindError(FermNLTSError, TypeError):
    category = "kind"


class OperatorIndexError(FermNLTSError, IndexError):
    category = "index"


class ParityError(FermNLTSError, ValueError):
    category = "parity"


class LayoutError(FermNLTSError, ValueError):
    category = "layout"


class SymmetryError(FermNLTSError, ValueError):
    category = "symmetry"


class CapExceededError(FermNLTSError):
    category = "cap"


class ConnectivityError(FermNLTSError, ValueError):
    category = "connectivity"


class BasisError(FermNLTSError, ValueError):
    category = "basis"


class CoverageError(FermNLTSError, ValueError):
    category = "coverage"


class DegenerateInputError(FermNLTSError, ValueError):
    category = "degenerate"


class VerificationFailure(FermNLTSError):
    category = "verification"


EXIT_CODES = {
    ParseError: 2,
    OperatorIndexError: 3,
    DimensionError: 3,
    KindError: 3,
    ParityError: 3,
    LayoutError: 3,
    SymmetryError: 3,
    ConnectivityError: 3,
    BasisError: 3,
    CoverageError: 3,
    DegenerateInputError: 3,
    CapExceededError: 4,
    VerificationFailure: 5,
}


def exit_code_for(exc: BaseException) -> int:
    for cls in type(exc).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return 1
