"""Exception types shared across the package."""


class InvalidBundleData(ValueError):
    """Serre data that cannot describe a normalized rank-two bundle."""


class InvalidC1(InvalidBundleData):
    pass


class MinimalityViolation(InvalidBundleData):
    """The declared twist r is not the least twist with a section."""


class LocalFreenessViolation(InvalidBundleData):
    """Cayley-Bacharach fails, so no locally free extension exists."""


class WindowTooSmall(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


class VerificationAlarm(AssertionError):
    """A computed value contradicts a proven statement. Should never fire."""


class OracleMismatch(VerificationAlarm):
    pass


class ConnectednessViolation(VerificationAlarm):
    pass


class ClassificationAlarm(VerificationAlarm):
    pass
