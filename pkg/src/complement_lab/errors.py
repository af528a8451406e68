"""Exception hierarchy shared across the package."""


class ComplementLabError(Exception):
    """Base class for all errors raised by complement_lab."""


class InvalidExponentError(ComplementLabError, ValueError):
    pass


class InvalidParameterError(ComplementLabError, ValueError):
    pass


class InvalidPartitionError(ComplementLabError, ValueError):
    pass


class CapacityError(ComplementLabError, MemoryError):
    pass


class RangeError(ComplementLabError, IndexError):
    pass


class FormatError(ComplementLabError, ValueError):
    pass


class IntegrityError(ComplementLabError):
    """An exact identity or finite counting inequality failed.

    These checks cannot fail for correct code, so this always signals a bug
    (or corrupted input) rather than a mathematical finding.
    """


class NumericEnvironmentError(ComplementLabError, ArithmeticError):
    pass
