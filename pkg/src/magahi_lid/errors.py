"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LidError(Exception):
    """Base class for every error raised by this package."""


class DecodeError(LidError, ValueError):
    def __init__(self, offset: int, reason: str = "invalid UTF-8") -> None:
        super().__init__(f"{reason} at byte offset {offset}")
        self.offset = offset


class PreconditionError(LidError, ValueError):
    pass


class ConfigError(LidError, ValueError):
    pass


class IntegrityError(LidError):
    pass


class UndefinedRatioError(LidError, ZeroDivisionError):
    pass


class ParseError(LidError, ValueError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message: str, lineno: int | None = None, path: str | None = None) -> None:
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"line {lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.lineno = lineno
        self.path = path
