"""Exception hierarchy shared by all modules."""


class OrliczLabError(Exception):
    """Base class for every error raised by this package."""


class InvalidGrid(OrliczLabError, ValueError):
    pass


class InvalidOrliczFunction(OrliczLabError, ValueError):
    """Construction data violates Φ(0)=0, monotonicity or convexity."""


class OutOfTabulatedRange(OrliczLabError, ValueError):
    pass


class DegenerateFunction(OrliczLabError, ValueError):
    pass


class Unbounded(OrliczLabError, ArithmeticError):
    pass


class EmptyInterval(OrliczLabError, ValueError):
    pass


class NonPositiveParameter(OrliczLabError, ValueError):
    pass


class EmptyCombination(OrliczLabError, ValueError):
    pass


class EmptyRange(OrliczLabError, ValueError):
    pass


class ModularNeverReachesOne(OrliczLabError, ArithmeticError):
    pass


class ModularInfiniteEverywhere(OrliczLabError, ArithmeticError):
    pass


class WrongRegime(OrliczLabError, ValueError):
    """The hypothesis lim Φ(x)/x = 0 (or > 0) required by a routine fails."""


class SearchExhausted(OrliczLabError, ArithmeticError):
    pass


class InvalidPlan(OrliczLabError, ValueError):
    pass


class Delta2Unverified(OrliczLabError, ValueError):
    pass


class CertificateMissing(OrliczLabError, ValueError):
    pass


class QuadratureFailure(OrliczLabError, ArithmeticError):
    pass


class MalformedSequence(OrliczLabError, ValueError):
    pass


class NotSubstantial(OrliczLabError, ValueError):
    pass


class DescriptorError(OrliczLabError, ValueError):
    """A textual descriptor does not match the grammar."""
