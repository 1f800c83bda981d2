"""Exception hierarchy.

``PreconditionError`` subclasses signal that a mathematical precondition of an
operation does not hold for the given input (the CLI maps them to exit code 2).
``SchemaError`` signals a malformed input document (exit code 1).
"""


class RelcalcError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(RelcalcError, ValueError):
    """Ambient dimensions of the operands do not agree."""


class PreconditionError(RelcalcError):
    """A mathematical precondition of the requested operation fails."""


class NonTrivialIntersection(PreconditionError):
    """A direct sum was requested for relations that intersect nontrivially."""


class NotOrthogonal(PreconditionError):
    """An orthogonal sum was requested for non-orthogonal relations."""


class NotAnOperator(PreconditionError):
    """The relation has a nontrivial multivalued part."""


class DomainNotContained(PreconditionError):
    """The domain inclusion required for relative boundedness fails."""


class NonSquareRelation(PreconditionError):
    """Eigenvalue enumeration needs ``dim T == n``."""


class SingularPencil(PreconditionError):
    """``det(G - zF)`` vanishes identically; every point is an eigenvalue."""


class NotSymmetric(PreconditionError):
    pass


class NotDissipative(PreconditionError):
    pass


class NotAContraction(PreconditionError):
    pass


class DomainNotInDeficiencySpace(PreconditionError):
    pass


class NotAnExtension(PreconditionError):
    pass


class AlphaNotQuasiRegular(PreconditionError):
    pass


class IndicesUnequal(PreconditionError):
    pass


class JoinNotContractive(PreconditionError):
    """The orthogonal join of two contractions is not a contraction.

    ``witness`` holds a pair ``(f, g)`` of the join with ``||g|| > ||f||``.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ZetaIsEigenvalue(PreconditionError):
    pass


class DegenerateMobius(PreconditionError):
    pass


class RootInUpperHalfPlaneOrReal(PreconditionError):
    pass


class KernelNotPositive(PreconditionError):
    pass


class TauOutsideDisk(PreconditionError):
    pass


class WNotInUpperHalfPlane(PreconditionError):
    pass


class LambdaNotARoot(PreconditionError):
    pass


class DegenerateKernel(PreconditionError):
    pass


class NumericalFailure(RelcalcError):
    """An internal identity that must hold failed numerically."""


class SchemaError(RelcalcError, ValueError):
    """Malformed relation or report document."""


class DocumentDimensionMismatch(SchemaError, DimensionMismatch):
    """A vector in an input document has the wrong length."""
