"""Exception hierarchy. CLI exit codes are attached to the classes."""


class OpenGameError(Exception):
    exit_code = 2


class DomainError(OpenGameError, ValueError):
    """A value is outside its type, or a type is malformed."""


class StructuralError(OpenGameError, TypeError):
    """A profile, value or continuation does not fit the game it is used with."""


class CompositionError(OpenGameError, TypeError):
    """Two games whose interfaces do not line up were composed."""

    def __init__(self, message, upper=None, lower=None):
        super().__init__(message)
        self.upper = upper
        self.lower = lower

    def __reduce__(self):
        return (type(self), (str(self), self.upper, self.lower))


class SelectionError(OpenGameError, ValueError):
    """A selection function cannot be used with the given types."""


class NotClosedError(OpenGameError):
    def __init__(self, iface):
        super().__init__(f"not a closed game: interface is {iface}")
        self.iface = iface

    def __reduce__(self):
        return (type(self), (self.iface,))


class BudgetExceeded(OpenGameError):
    exit_code = 3

    def __init__(self, needed, budget, what="strategy profiles"):
        super().__init__(f"budget exceeded: {needed} {what} > budget {budget}")
        self.needed = needed
        self.budget = budget
        self.what = what

    def __reduce__(self):
        return (type(self), (self.needed, self.budget, self.what))


class SourceError(OpenGameError):
    """Lexical, syntactic or type error in a game file, with a position."""

    kind = "error"

    def __init__(self, message, line=None, col=None, path=None):
        self.message = message
        self.line = line
        self.col = col
        self.path = path
        super().__init__(self.__str__())

    def __reduce__(self):
        return (type(self), (self.message, self.line, self.col, self.path))

    def __str__(self):
        where = self.path or "<input>"
        if self.line is not None:
            where += f":{self.line}:{self.col}"
        return f"{where}: {self.kind}: {self.message}"


class LexError(SourceError):
    kind = "lexical error"


class ParseError(SourceError):
    kind = "syntax error"


class TypeCheckError(SourceError):
    kind = "type error"


class UnitBendError(TypeCheckError):
    """A string bent upwards (a unit) was requested; these are never games."""

    kind = "type error"


class ProfileError(OpenGameError):
    """A profile given as JSON does not match the game's strategy space."""
