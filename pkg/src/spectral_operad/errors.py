"""Exception types shared across the package."""


class SpectralOperadError(Exception):
    """Base class for every error raised by this package."""


class InvalidHandleError(SpectralOperadError, KeyError):
    """A vertex handle does not name a vertex of the tree."""


class RegularityError(SpectralOperadError, ValueError):
    """A factorization needs a regular graph and got an irregular one."""


class ConnectivityError(SpectralOperadError, ValueError):
    """A factorization needs a connected graph and got a disconnected one."""


class MissingFactorError(SpectralOperadError, ValueError):
    """A spectrum word does not contain the letter that should be removed."""


class AdmissibilityError(SpectralOperadError, ValueError):
    """An edge colouring is not admissible."""


class NearPoleError(SpectralOperadError, ValueError):
    """A resolvent was evaluated too close to one of its poles."""


class InexactDivisionError(SpectralOperadError, ArithmeticError):
    """A polynomial division that should be exact left a remainder."""


class TreeSyntaxError(SpectralOperadError, ValueError):
    """Malformed tree expression; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
