"""
Error types shared across the ultratree packages.

All of them are ``ValueError`` subclasses so callers that only care about
"bad input" can keep catching ``ValueError``; the CLI uses the concrete
class to pick an exit code.
"""


class PrecisionError(ValueError):
    """A digit window or operation reaches past the carried precision."""


class DeskBoundError(ValueError):
    """A desk-scale size bound from ``config.bounds`` would be exceeded."""


class DomainError(ValueError):
    """An operand lies outside the domain of the requested operation."""


class SpecMismatchError(ValueError):
    """Operands belong to different field extensions."""


class LiteralParseError(ValueError):
    """A textual literal does not follow the documented grammar."""
