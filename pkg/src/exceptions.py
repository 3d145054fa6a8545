class StratkitError(Exception):
    pass


class InputError(StratkitError):
    """Bad input: malformed documents, unknown names, violated invariants."""


class DuplicatePointError(InputError):
    pass


class UnknownPointError(InputError):
    pass


class InvariantViolation(InputError):
    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        message = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(message)


class NotAPosetError(InputError):
    pass


class StratumMismatchError(InputError):
    pass


class BoundExceededError(InputError):
    pass


class DocumentError(InputError):
    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownFixtureError(InputError):
    pass


class UnknownFamilyError(InputError):
    pass


class InvalidParameterError(InputError):
    pass


class PreconditionError(StratkitError):
    """A theorem or operation was applied outside its hypotheses."""

    def __init__(self, clause: str):
        self.clause = clause
        super().__init__(clause)


class DefectError(StratkitError):
    """Independently computed conditions that must agree did not.

    This always indicates a bug in the library, never bad input.
    """
