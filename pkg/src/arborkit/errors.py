"""Exception hierarchy shared by every layer of the toolkit."""


class ArborError(Exception):
    """Base class for structured errors raised by arborkit."""

    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        return {"error": self.code, "message": str(self), **self.details}


class DomainMismatch(ArborError):
    code = "domain-mismatch"


class ZeroDivisionPoly(ArborError, ZeroDivisionError):
    code = "division-by-zero"


class CapExceeded(ArborError):
    """A configured size cap (degree, subset count, enumeration size) was hit."""

    code = "cap-exceeded"


class StrictlyPostCritical(ArborError):
    code = "strictly-post-critical"


class NotPCFError(ArborError):
    code = "not-pcf"


class Unsupported(ArborError):
    code = "unsupported"


class ParseError(ArborError, ValueError):
    code = "parse-error"
