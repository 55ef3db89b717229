class DomainError(ValueError):
    """Input violates a documented precondition."""


class ResourceError(RuntimeError):
    """A configurable resource cap was exceeded.

    Carries the cap name and, where meaningful, a partial result
    (e.g. the count reached before enumeration was cut off).
    """

    def __init__(self, cap_name, message, partial=None):
        super().__init__(message)
        self.cap_name = cap_name
        self.partial = partial
