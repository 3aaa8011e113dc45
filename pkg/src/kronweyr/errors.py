"""Exception hierarchy.

Every error raised by the library derives from :class:`KronWeyrError`.  The
``exit_code`` attribute is what the command line maps the error to.
"""


class KronWeyrError(Exception):
    exit_code = 2


class DimensionMismatch(KronWeyrError, ValueError):
    pass


class ShapeMismatch(DimensionMismatch):
    pass


class NotSquare(DimensionMismatch):
    pass


class NotNested(KronWeyrError, ValueError):
    pass


class ZeroPolynomial(KronWeyrError, ValueError):
    pass


class SingularTransform(KronWeyrError, ValueError):
    pass


class NotAChain(KronWeyrError, ValueError):
    pass


class NotSingular(NotAChain):
    pass


class Infeasible(KronWeyrError, ValueError):
    pass


class NotRankOne(KronWeyrError, ValueError):
    pass


class ZeroPerturbation(KronWeyrError, ValueError):
    pass


class UnresolvedEigenvalues(KronWeyrError):
    exit_code = 3

    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = tuple(factors)


class InternalInvariantError(KronWeyrError, AssertionError):
    """A postcondition that theory guarantees did not hold."""

    exit_code = 4


class InconsistentInvariants(InternalInvariantError):
    pass
