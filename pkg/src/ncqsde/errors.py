"""Exception hierarchy shared by every module."""


class NcqsdeError(Exception):
    pass


class ModeMismatch(NcqsdeError):
    pass


class DegreeOverflow(NcqsdeError):
    pass


class DimensionMismatch(NcqsdeError):
    pass


class NotAGradient(NcqsdeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotConservative(NotAGradient):
    pass


class NotHermitianizable(NcqsdeError):
    pass


class NotCompletable(NcqsdeError):
    pass


class InvalidS(NcqsdeError):
    pass


class InternalContractViolation(NcqsdeError):
    """Raised when a theorem-guaranteed identity fails; always a bug."""


class DegreeTooHighForDim(NcqsdeError):
    pass


class ParseError(NcqsdeError):
    def __init__(self, message, position=None):
        self.detail = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ExpressionSyntaxError(ParseError):
    pass


class UnknownVariable(ParseError):
    pass


class BadExponent(ParseError):
    pass


class CapRequired(ParseError):
    pass


class SeriesArgumentError(ParseError):
    pass
