"""Exception hierarchy shared by every isomon module."""


class IsomonError(Exception):
    """Base class for all library errors."""


class OutOfRange(IsomonError, ValueError):
    def __init__(self, point, n):
        super().__init__(f"point {point} outside 1..{n}")
        self.point = point
        self.n = n


class NotInjective(IsomonError, ValueError):
    def __init__(self, point, side):
        super().__init__(f"duplicated {side} point {point}")
        self.point = point
        self.side = side


class MismatchedGroundSet(IsomonError, ValueError):
    pass


class IndexOutOfRange(IsomonError, ValueError):
    pass


class EmptyDomainSet(IsomonError, ValueError):
    pass


class UnsupportedN(IsomonError, ValueError):
    pass


class UnboundLetter(IsomonError, KeyError):
    def __str__(self):
        return f"letter {self.args[0]!r} has no assigned element"


class NotInMonoid(IsomonError, LookupError):
    pass


class LimitExceeded(IsomonError):
    """A search or enumeration ran past its configured budget.

    This is never a refutation; callers report it as *inconclusive*.
    """

    def __init__(self, message, *, limit=None, value=None):
        super().__init__(message)
        self.limit = limit
        self.value = value


class SpecInvalid(IsomonError, ValueError):
    pass


class ConsequenceNotCertified(IsomonError):
    pass


class NoDefiningRelation(IsomonError, LookupError):
    pass


class MismatchAgainstV(IsomonError):
    def __init__(self, extra, missing, report=None):
        super().__init__(f"{len(extra)} extra / {len(missing)} missing relations")
        self.extra = extra
        self.missing = missing
        self.report = report


class IoFailure(IsomonError, OSError):
    pass
