class PutlabError(Exception):
    """Base class for library errors."""


class ValidationError(PutlabError, ValueError):
    """An input object violates its structural invariants."""


class NotPSDError(ValidationError):
    pass


class DomainError(PutlabError, ValueError):
    """A real parameter lies outside the range where the formula is defined."""


class CapabilityError(PutlabError, ValueError):
    """The request is well formed but outside what the library supports."""


class PreconditionError(PutlabError, ValueError):
    pass
