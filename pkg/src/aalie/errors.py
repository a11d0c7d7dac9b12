"""Exception hierarchy.

``MathDomainError`` subclasses signal violated mathematical preconditions
(CLI exit code 3); ``ParseError``/``ValidationError`` signal bad input
files (CLI exit code 2).
"""


class AalieError(Exception):
    """Base class for every error raised by this package."""


class MathDomainError(AalieError):
    """A mathematical precondition was violated."""


class DegenerateAlgebra(MathDomainError):
    """The multiplicity data describes the zero matrix, i.e. an Abelian algebra."""


class DimensionMismatch(MathDomainError):
    pass


class AmbientMismatch(MathDomainError):
    """Two objects belong to different ambient multiplicity functions."""


class NotInAbelianDomain(MathDomainError):
    """Logarithm requested outside ker(J) + C, where it is not exact."""


class NotInvariant(MathDomainError):
    """A type-2 subgroup basis is not invariant under the structure matrix."""


class DependentBasis(MathDomainError):
    pass


class SingularPhi(MathDomainError):
    """The straightening map was requested at a singular parameter."""


class NotCentral(MathDomainError):
    pass


class NotDiscrete(MathDomainError):
    pass


class RankBoundViolated(MathDomainError):
    """Internal consistency failure: a central lattice exceeded the rank bound."""


class InexactGenerator(MathDomainError):
    """A lattice/certificate operation received an approximate element."""


class NotAbelian(MathDomainError):
    pass


class NotContained(MathDomainError):
    pass


class ParseError(AalieError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}" if path else reason)


class ValidationError(AalieError):
    def __init__(self, name: str, reason: str):
        self.name = name
        self.reason = reason
        super().__init__(f"{name}: {reason}")
