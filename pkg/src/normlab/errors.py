"""Exception hierarchy shared by every module."""


class NormlabError(Exception):
    """Base class; the CLI maps any of these to exit code 2."""


class NotPrime(NormlabError, ValueError):
    pass


class Reducible(NormlabError, ValueError):
    pass


class FieldMismatch(NormlabError, TypeError):
    pass


class DivisionByZero(NormlabError, ZeroDivisionError):
    pass


class ZeroPolynomial(NormlabError, ValueError):
    pass


class ZeroElement(NormlabError, ValueError):
    pass


class TooLarge(NormlabError, ValueError):
    pass


class CapExceeded(NormlabError, ValueError):
    pass


class NotInC(NormlabError, ValueError):
    pass


class NotNormal(NormlabError, ValueError):
    pass


class BadTable(NormlabError, ValueError):
    pass


class MixedFields(NormlabError, ValueError):
    pass


class NotGroupAlgebra(NormlabError, ValueError):
    pass


class NotSimple(NormlabError, ValueError):
    pass


class BadAlgebra(NormlabError, ValueError):
    pass


class CatalogError(NormlabError, ValueError):
    pass


class NotFound(NormlabError, LookupError):
    """A search that the theory says must succeed came back empty."""
