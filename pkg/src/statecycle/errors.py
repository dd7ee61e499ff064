"""Exception types raised by the library."""


class StateCycleError(Exception):
    """Base class for all library errors."""

    code = "error"


class MalformedToken(StateCycleError, ValueError):
    code = "malformed_token"


class ArcCountMismatch(StateCycleError, ValueError):
    code = "arc_count_mismatch"


class OrientationConflict(StateCycleError, ValueError):
    code = "orientation_conflict"


class UnknownName(StateCycleError, KeyError):
    code = "unknown_name"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class LengthMismatch(StateCycleError, ValueError):
    code = "length_mismatch"


class NotACycle(StateCycleError, ValueError):
    code = "not_a_cycle"


class TooLarge(StateCycleError):
    code = "too_large"


class OutOfRange(StateCycleError, IndexError):
    code = "out_of_range"


class SeparationViolated(StateCycleError):
    code = "separation_violated"


class InvalidRegion(StateCycleError, ValueError):
    code = "invalid_region"
