"""Exception hierarchy for the simulator."""


class PSMError(Exception):
    """Base class for every error raised by :mod:`psm_ras`."""


class MalformedMatrix(PSMError, ValueError):
    pass


class NotHermitian(PSMError, ValueError):
    pass


class SingularMatrix(PSMError, ValueError):
    pass


class RankDeficientChannel(PSMError, ValueError):
    """The selected sub-channel does not have full row rank."""


class InvalidConfig(PSMError, ValueError):
    pass


class InvalidDimensions(PSMError, ValueError):
    pass


class IndexOutOfRange(PSMError, IndexError):
    pass


class UnsupportedOrder(PSMError, ValueError):
    """Constellation order not available for the requested family."""


class UnsupportedKind(PSMError, ValueError):
    """No FLOP model exists for the requested strategy."""


class NoFeasiblePattern(PSMError, RuntimeError):
    """Every receive-antenna pattern was rank deficient."""
