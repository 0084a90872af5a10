"""Exception hierarchy.

Every error raised by the library derives from :class:`HdxError`, and most
also derive from the builtin exception a caller would naturally catch
(``ValueError``, ``KeyError``, ...).
"""


class HdxError(Exception):
    pass


# complex construction / combinatorics
class EmptyInput(HdxError, ValueError):
    pass


class MixedDimension(HdxError, ValueError):
    pass


class InvalidSimplex(HdxError, ValueError):
    pass


class SimplexNotInComplex(HdxError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NotPartite(HdxError, ValueError):
    pass


class NotGalleryConnected(HdxError, ValueError):
    pass


# weights
class NonPositiveWeight(HdxError, ValueError):
    pass


class MissingFacet(HdxError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# cochains and operators
class DegreeMismatch(HdxError, ValueError):
    pass


class DegreeOutOfRange(HdxError, ValueError):
    pass


class DegreeTooHigh(DegreeOutOfRange):
    pass


# spectra
class NotSelfAdjoint(HdxError, ValueError):
    pass


class DisconnectedLink(HdxError, ValueError):
    def __init__(self, tau, message=None):
        self.tau = tuple(tau)
        super().__init__(message or f"link of {self.tau} has a disconnected 1-skeleton")


# harness
class PoleHit(HdxError, ZeroDivisionError):
    pass


# generators
class BadParams(HdxError, ValueError):
    pass


class Rejected(HdxError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


# documents
class ParseError(HdxError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(HdxError, ValueError):
    pass
