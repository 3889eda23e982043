"""Exception types raised by input validation."""


class EmpsupError(ValueError):
    """Base class for all validation errors in this package."""


class EmptySample(EmpsupError):
    pass


class OutOfDomain(EmpsupError):
    pass


class InvalidAlpha(EmpsupError):
    pass


class TooSmallN(EmpsupError):
    pass


class InvalidA(EmpsupError):
    pass


class InvalidLambda(EmpsupError):
    pass


class TooFewRecords(EmpsupError):
    pass
