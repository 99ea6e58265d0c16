"""Exception types shared across the package."""


class BlinkMorseError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateEye(BlinkMorseError):
    """Eye landmarks with zero horizontal width; EAR is undefined."""


class NonMonotonicTimestamp(BlinkMorseError):
    """A producer fed timestamps that went backwards."""


class EmptyCalibration(BlinkMorseError):
    """Calibration input contained no usable frames."""


class UnsupportedCharacter(BlinkMorseError):
    """Character outside the A-Z / 0-9 alphabet."""

    def __init__(self, char: str):
        super().__init__(f"unsupported character: {char!r}")
        self.char = char


class ProtocolError(BlinkMorseError):
    """Malformed wire line. Carries byte offset and, when known, line number."""

    def __init__(self, reason: str, offset: int = 0, line_no: int | None = None):
        loc = f"line {line_no}, " if line_no is not None else ""
        super().__init__(f"{loc}offset {offset}: {reason}")
        self.reason = reason
        self.offset = offset
        self.line_no = line_no


class MalformedCsv(BlinkMorseError):
    """Bad CSV row. Carries the 1-based line number."""

    def __init__(self, reason: str, line_no: int):
        super().__init__(f"line {line_no}: {reason}")
        self.reason = reason
        self.line_no = line_no


class NegativeDuration(BlinkMorseError):
    """Trial ended before it started."""


class EmptyStudy(BlinkMorseError):
    """No trial records to analyze."""


class IoFailure(BlinkMorseError):
    """Filesystem or socket operation failed."""
