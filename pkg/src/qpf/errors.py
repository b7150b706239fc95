"""Exception hierarchy shared by every qpf module."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation accepts."""


class InvalidPermutationError(DomainError):
    """A sequence expected to hold distinct entries contains a repeat."""


class ModeError(DomainError):
    """Scalar mode is missing, mismatched, or forbidden for the request."""
