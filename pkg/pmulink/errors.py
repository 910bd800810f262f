"""
Exceptions raised by `pmulink`.

Everything derives from `PMULinkError`, so a caller can
catch the whole family at once. Decode failures share
the `FrameError` base, since a receiver usually wants
to treat all of them as "this frame is gone".
"""

__all__ = [
    "PMULinkError",
    "ConfigurationError",
    "ContractViolation",
    "InsufficientDataError",
    "FrameRangeError",
    "FrameError",
    "MalformedFrameError",
    "TruncatedFrameError",
    "IntegrityError",
    "EmptyStatsError",
    "UsageError",
    "StartupError",
]


class PMULinkError(Exception):
    pass


class ConfigurationError(PMULinkError, ValueError):
    pass


class ContractViolation(PMULinkError, ValueError):
    pass


class InsufficientDataError(PMULinkError, ValueError):
    pass


class FrameRangeError(PMULinkError, ValueError):
    """
    A value can't be represented in the fixed 16/32-bit frame fields.
    """


class FrameError(PMULinkError):
    """
    A byte sequence could not be decoded into a data frame.
    """


class MalformedFrameError(FrameError):
    pass


class TruncatedFrameError(FrameError):
    pass


class IntegrityError(FrameError):
    """
    The CHK word doesn't match the CRC of the frame.
    """


class EmptyStatsError(PMULinkError, ValueError):
    pass


class UsageError(PMULinkError):
    pass


class StartupError(PMULinkError, RuntimeError):
    pass
