"""Exception hierarchy.

Every error raised on bad input derives from :class:`AssocError`, itself a
``ValueError``.  :class:`NumericalDegeneracy` marks inputs that are valid in
shape but make a coefficient undefined (zero norms, constant triangles); the
command line maps it to a distinct exit code.
"""


class AssocError(ValueError):
    """Base class for input validation errors."""


class NumericalDegeneracy(AssocError):
    """Input is well formed but a quantity is undefined (division by zero)."""


class DimensionMismatch(AssocError):
    pass


class InvalidAlpha(AssocError):
    pass


class NotSymmetric(AssocError):
    pass


class NotPSD(AssocError):
    pass


class NotPreprocessed(AssocError):
    pass


class NotStandardized(AssocError):
    pass


class ZeroVarianceColumn(AssocError):
    def __init__(self, name):
        super().__init__(f"column {name!r} has zero variance")
        self.name = name


class InvalidCorrelation(AssocError):
    pass


class TooFewObservations(AssocError):
    pass


class TooManyObservations(AssocError):
    pass


class InvalidPlan(AssocError):
    pass


class InvalidK(AssocError):
    pass


class NotPositiveDefinite(AssocError):
    pass


class DegenerateTable(NumericalDegeneracy):
    pass


class InternalConsistencyError(NumericalDegeneracy):
    """A value that must be nonnegative came out clearly negative."""


class ParseError(AssocError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class NonNumericCell(ParseError):
    pass


class RaggedRows(ParseError):
    pass


class EmptyTable(ParseError):
    pass
