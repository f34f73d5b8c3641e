"""Exception types. NumericError subclasses map to CLI exit code 2."""


class SlopeNavError(Exception):
    pass


class ExprError(SlopeNavError):
    """Syntax or name error in a height expression."""

    def __init__(self, msg, offset=None):
        if offset is not None:
            msg = f"{msg} at offset {offset}"
        super().__init__(msg)
        self.offset = offset


class NumericError(SlopeNavError):
    pass


class DomainError(NumericError):
    """sqrt/ln of a negative number, division by zero and the like."""


class ConvexityViolation(NumericError):
    """Wind norm at or beyond the strong convexity bound."""


class AdmissibilityError(NumericError):
    """Raised mid-integration; ``path`` holds the states computed so far."""

    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class RootCountError(NumericError):
    pass


class DegenerateDenominator(NumericError):
    pass


class DriftError(NumericError):
    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class SingularFrame(NumericError):
    pass
