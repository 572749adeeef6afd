"""Exception hierarchy shared by every module of the package."""


class EntropicOCCError(Exception):
    """Base class for all errors raised by this package."""


class DataError(EntropicOCCError, ValueError):
    """Malformed, inconsistent or unparsable input data."""


class DegenerateError(EntropicOCCError, ArithmeticError):
    """A numeric quantity is undefined for the given input.

    Raised for edgeless graphs (no spanning-graph length) and for datasets
    whose samples are all identical.
    """
