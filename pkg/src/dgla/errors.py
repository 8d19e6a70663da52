"""Exception types shared across the library.

Every error that a caller is expected to catch has its own class; generic
misuse (wrong types, dimension mismatches at construction time) raises
ValueError.
"""


class DglaError(Exception):
    """Base class for library-specific errors."""


class WindowTooNarrow(DglaError):
    """A degree window does not contain the data needed for a computation.

    ``required`` (when set) is the window that would have sufficed.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotAComplex(DglaError):
    """d squared is nonzero somewhere it was required to vanish."""


class InhomogeneousExpression(DglaError):
    """An expression mixes degrees where a homogeneous one is required."""


class UnknownGenerator(DglaError):
    """An expression refers to a generator absent from the presentation."""


class IncompatibleSubs(DglaError):
    """Designated subalgebras cannot be matched (degree/differential)."""


class UnsupportedSub(DglaError):
    """An operation does not support this kind of designated subalgebra."""


class NotInvertibleLinearPart(DglaError):
    """The linear part of a morphism is singular on indecomposables."""


class NonMinimalAmbient(DglaError):
    """An operation requires a minimal relative presentation."""


class SubMismatch(DglaError):
    """Derivations or gluing data disagree about the relative subalgebra."""


class NotQuasiIso(DglaError):
    """A map failed the homology rank check over the requested window."""


class ModeUnavailable(DglaError):
    """The requested unipotent-part mode does not apply to this input."""


class NotUnimodular(DglaError):
    """A graded symplectic pairing is singular."""


class OmegaNotClosed(DglaError):
    """delta(omega) is nonzero for a candidate manifold model."""


class NotMinimal(DglaError):
    """A differential has a nonzero linear part where minimality is required."""


class BadPontryaginDegrees(DglaError):
    """Pontryagin functionals supported outside degrees 4i-1."""


class RhoNotChainMap(DglaError):
    """rho does not annihilate the differential on generators."""


class AxiomFailure(DglaError):
    """An outer-action axiom fails on a basis pair."""


class ClassExceeded(DglaError):
    """Iterated brackets do not vanish at the stated nilpotency class."""


class NotNilpotent(DglaError):
    """An action claimed to be nilpotent fails to terminate."""


class SemisimplicityNotAsserted(DglaError):
    """A gluing pipeline was invoked without the semisimplicity flag."""


class DimensionMismatch(DglaError):
    """Boundary connected sum of manifolds of different dimensions."""


class GrammarError(DglaError):
    """A Lie expression string is malformed; ``offset`` is the byte offset."""

    def __init__(self, message, offset):
        super().__init__("%s (at offset %d)" % (message, offset))
        self.offset = offset


class SchemaError(DglaError):
    """A JSON input violates the schema; ``pointer`` is a JSON pointer."""

    def __init__(self, message, pointer=""):
        super().__init__("%s (at %s)" % (message, pointer or "/"))
        self.pointer = pointer
