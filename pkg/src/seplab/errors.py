"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI
reports; the message names the violated precondition or bound.
"""


class SeplabError(Exception):
    code = "E_INTERNAL"

    def __init__(self, message=""):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.code}: {self.message}" if self.message else self.code


class ZeroIdealError(SeplabError):
    code = "E_ZERO_IDEAL"


class UncertifiedError(SeplabError):
    code = "E_UNCERTIFIED"


class TruncationError(SeplabError):
    code = "E_TRUNCATION"


class DegreeError(SeplabError):
    code = "E_DEGREE"


class NoLiftError(SeplabError):
    code = "E_NO_LIFT"


class NotCenteredError(SeplabError):
    """The lifted point is centered away from the origin of the chart."""

    code = "E_NOT_CENTERED"


class TerminalError(SeplabError):
    code = "E_TERMINAL"


class HypothesisError(SeplabError):
    code = "E_HYPOTHESIS"


class NotVIdealError(SeplabError):
    code = "E_NOT_VIDEAL"


class ParseError(SeplabError):
    code = "E_PARSE"

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)


class ScopeError(SeplabError):
    code = "E_SCOPE"
