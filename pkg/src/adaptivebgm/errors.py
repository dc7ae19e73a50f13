"""Exception hierarchy shared by all adaptivebgm modules."""


class AdaptiveBgmError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(AdaptiveBgmError):
    """Bad wiring: unknown policy id, missing/empty stem, invalid setup."""


class DomainError(AdaptiveBgmError, ValueError):
    """A value is outside its documented domain (hp, ep, distance, level)."""


class FormatError(AdaptiveBgmError, ValueError):
    """A file (WAV, rules config, match log) is malformed; the message names
    the offending field."""


class SequencingError(AdaptiveBgmError):
    """Frame streams are empty, misaligned, or out of order."""


class CalibrationError(AdaptiveBgmError):
    """Decoder reference profile cannot be built (e.g. colliding bins)."""


class ProtocolError(AdaptiveBgmError):
    """Base class for wire-level errors."""


class MalformedFrame(ProtocolError):
    """Bad length field, unknown type tag, or payload size mismatch."""


class FieldRange(ProtocolError):
    """A state field exceeds its legal range (hp > 400, ep > 300, x > 800)."""


class Truncated(ProtocolError):
    """Byte stream ended before the declared payload length."""
