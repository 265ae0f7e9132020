"""Exceptions raised by the solver library."""


class LKBanditError(Exception):
    """Base class for all errors raised by lkbandit."""


class TSPLIBParseError(LKBanditError, ValueError):
    """A TSPLIB instance, tour or registry file could not be read."""

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UsageError(LKBanditError, ValueError):
    """A function or command was called with arguments it does not accept."""


class InternalError(LKBanditError, RuntimeError):
    """An invariant of the solver state was broken."""


__all__ = ['LKBanditError', 'TSPLIBParseError', 'UsageError', 'InternalError']
