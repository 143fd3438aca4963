"""Exception types shared across the package."""


class XorGamesError(Exception):
    """Base class for all package errors."""


class IndexOutOfRange(XorGamesError):
    """A clause question index lies outside [1..n]."""


class DuplicateClause(XorGamesError):
    """Two clauses coincide as full (a, b, c, s) tuples."""


class ExhaustedSpace(XorGamesError):
    """Requested more distinct clauses than the sampling space holds."""


class DimensionMismatch(XorGamesError):
    """Operands have incompatible dimensions."""


class NotStaircase(XorGamesError):
    """Matrix is not in upper-staircase form with a pivot in every row."""


class NotQPerfect(XorGamesError):
    """Operation requires a quantum-satisfiable system but got one with an
    odd residual."""


class ClassifierDisagreement(XorGamesError):
    """Two classification methods returned different flags; indicates an
    implementation bug, never expected on valid input."""

    def __init__(self, game, verdicts):
        self.game = game
        self.verdicts = verdicts
        lines = ", ".join(
            f"{name}: q={q} c={c}" for name, (q, c) in verdicts.items()
        )
        super().__init__(f"classifiers disagree ({lines})")


class NoCrossing(XorGamesError):
    """A probability curve never crosses 1/2 inside the scanned window."""


class DegenerateFit(XorGamesError):
    """Linear fit requested on points that share a single x value."""


class ParseError(XorGamesError):
    """Malformed input file; carries a 1-based line number."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class LengthMismatch(XorGamesError):
    """Strategy vector length does not match 3n."""
