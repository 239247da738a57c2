class ConcordiaError(Exception):
    """Base class for every domain error raised by the lib package.

    The CLI reports ``name`` on stderr and exits with status 1.
    """

    @property
    def name(self):
        return type(self).__name__


class DivisionByZero(ConcordiaError): pass
class ZeroElement(ConcordiaError): pass
class RingMismatch(ConcordiaError): pass
class ParseError(ConcordiaError): pass

class DegenerateBaseChange(ConcordiaError): pass
class NotReducedValid(ConcordiaError): pass
class UnknownExample(ConcordiaError): pass
class MissingParameter(ConcordiaError): pass

class NotAChainMap(ConcordiaError): pass
class NotInvertible(ConcordiaError): pass
class NotACycle(ConcordiaError): pass
class RankNotOne(ConcordiaError): pass
class CycleInTorsion(ConcordiaError): pass

class UnsupportedPresentation(ConcordiaError): pass
class GroebnerDegreeExceeded(ConcordiaError): pass

class NonIntegral(ConcordiaError): pass
class MissingSignature(ConcordiaError): pass
class NotNonorientableValid(ConcordiaError): pass
class DirectionMismatch(ConcordiaError): pass
class IntegrityError(ConcordiaError): pass

class UnknownKnot(ConcordiaError): pass

class UsageError(ConcordiaError):
    """Malformed command-line input; the CLI exits with status 2."""
