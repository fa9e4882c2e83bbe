"""Exception hierarchy shared by all modules.

Everything raised on bad domain data derives from SkelefibError, so the
command-line driver can map any domain failure to a single exit code.
Parse failures of model files are kept separate (ModelParseError) because
they map to a different exit code.
"""


class SkelefibError(Exception):
    """Base class for all domain errors."""


class ModelParseError(Exception):
    """A model file could not be parsed into a degeneration model."""


# -- lattice ----------------------------------------------------------------

class EmptyInputError(SkelefibError):
    """An operation that needs at least one element got none."""


class NotSquareError(SkelefibError):
    """A square matrix was required."""


class NotCoprimeError(SkelefibError):
    """Entries were expected to have gcd 1."""


class NotUnimodularError(SkelefibError):
    """A matrix with determinant +-1 was required."""


# -- fan --------------------------------------------------------------------

class ZeroHeightRayError(SkelefibError):
    """A ray with last coordinate 0 cannot be sliced at height one."""


class NonPositiveHeightError(SkelefibError):
    """A ray multiplicity needs a positive last coordinate."""


class DimensionMismatchError(SkelefibError):
    """Operands live in different ambient dimensions."""


# -- degeneration -----------------------------------------------------------

class MissingCurveDataError(SkelefibError):
    """A stratum operation needs curve data that the model does not carry."""


class NotASurfaceModelError(SkelefibError):
    """Edge flips only make sense for relative dimension two."""


class DegenerateQuadError(SkelefibError):
    """The two triangles adjacent to the edge do not form a proper quad."""


class InvalidCurveDataError(SkelefibError):
    """Curve data violates the multiplicity balance condition."""


class PostconditionViolatedError(SkelefibError):
    """An internal consistency assertion failed on the produced object."""


# -- syz --------------------------------------------------------------------

class NormalizationError(SkelefibError):
    """Valuation data is not normalized against the multiplicities."""


class NonPositiveValuationError(SkelefibError):
    """Valuations of a valued point must be strictly positive."""


class NonPositiveBError(SkelefibError):
    """The stratum fan construction needs strictly positive b values."""


class NotLogCalabiYauError(SkelefibError):
    """The face does not carry the two-endpoint curve data required."""


class LabelMismatchError(SkelefibError):
    """Chart vertices and fan rays could not be matched by divisor label."""


class NonUnimodularTransitionError(SkelefibError):
    """The computed transition is not integral unimodular."""


class BrokenCycleError(SkelefibError):
    """Consecutive faces of a monodromy cycle share no usable wall."""


class SingularLatticeError(SkelefibError):
    """The period lattice matrix is singular."""


class ReducedBasisError(SkelefibError):
    """The explicit reduced-case basis only exists when all heights are 1."""
