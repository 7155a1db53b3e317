"""Exception types raised by the symbolic engine.

All engine errors derive from QfiltError so that the command-line layer can
map them to a validation exit code without enumerating causes.
"""


class QfiltError(Exception):
    """Base class for engine errors."""


class RingMismatchError(QfiltError):
    """Operands live over different rings, fields, or schemes."""


class LatticeTooLargeError(QfiltError):
    """An enumeration would exceed a configured size limit."""


class GluingError(QfiltError):
    """Chart data cannot be glued; the message names the first bad point."""


class UnsupportedFamilyError(QfiltError):
    """A symbolic filter base is not one of the recognized families."""


class ParseError(QfiltError):
    """A textual literal does not match its grammar."""
