"""Error taxonomy shared by all modules.

Two kinds of failure are distinguished because the CLI maps them to
different exit codes: malformed input (exit 2) and resource refusals
when a configured support cap or enumeration budget is exceeded
(exit 3).
"""


class BanachLabError(Exception):
    """Base class for all library errors."""


class InputError(BanachLabError):
    """Malformed or inconsistent input (wrong depth, bad syntax, ...)."""


class ParseError(InputError):
    """Syntax error in a textual format, with a byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CapExceeded(BanachLabError):
    """A support cap or enumeration budget was exceeded; the name of the
    violated cap is part of the message."""
