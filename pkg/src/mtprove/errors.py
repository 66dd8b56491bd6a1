"""Exception hierarchy shared by all subpackages."""


class MtpError(Exception):
    """Base class for every error raised by mtprove."""


class UndecidableAtDepth(MtpError):
    pass


class UndecidableAtBudget(MtpError):
    pass


class ParseError(MtpError):
    def __init__(self, message, position, expected=None):
        self.position = position
        self.expected = expected
        text = f"{message} at offset {position}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


class NotMLTP(MtpError):
    pass


class OrderTooLow(MtpError):
    pass


class LogSingularity(MtpError):
    pass


class ParityMismatch(MtpError):
    pass


class RadiusExceeded(MtpError):
    pass


class SignUndecided(MtpError):
    pass


class CannotCertify(MtpError):
    pass


class BoundInconclusive(CannotCertify):
    pass


class GroupingFails(CannotCertify):
    pass


class ProxyTooLoose(CannotCertify):
    pass


class BasePositivityFailed(MtpError):
    pass


class SideConditionFailed(MtpError):
    pass


class PointOutsideInterval(MtpError):
    pass


class LimitSignFailed(MtpError):
    pass


class NumeratorFailed(MtpError):
    pass


class ProofNotFound(MtpError):
    def __init__(self, message, frontier=()):
        self.frontier = list(frontier)
        super().__init__(message)
