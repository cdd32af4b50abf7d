"""Exception hierarchy.

Every error carries the CLI exit code of the pipeline stage that raised it,
so the front end can map failures without a lookup table.
"""


class AWGraphError(Exception):
    exit_code = 6
    status = "error"


class GraphInputError(AWGraphError):
    """Malformed text, asymmetric matrix, loops, or a disconnected graph."""

    exit_code = 1
    status = "input_error"


class NotRegular(AWGraphError):
    exit_code = 2
    status = "not_distance_regular"


class NotDistanceRegular(AWGraphError):
    exit_code = 2
    status = "not_distance_regular"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SpectralError(AWGraphError):
    """Eigenvalue clustering or Krein expansion did not behave as a DRG should."""

    exit_code = 2
    status = "not_distance_regular"


class NoQPolynomialOrdering(AWGraphError):
    exit_code = 3
    status = "not_q_polynomial"


class DualEigenvalueCollision(AWGraphError):
    exit_code = 3
    status = "not_q_polynomial"


class NotQRacah(AWGraphError):
    exit_code = 4
    status = "not_q_racah"


class NonConstantBeta(NotQRacah):
    pass


class AllCandidatesDegenerate(NotQRacah):
    pass


class ZeroCoefficient(NotQRacah):
    pass


class SingularSystem(NotQRacah):
    pass


class DiameterTooSmall(NotQRacah):
    pass


class NonThinModule(AWGraphError):
    exit_code = 5
    status = "non_thin"


class NumericalFailure(AWGraphError):
    """A certificate residual exceeded its tolerance."""

    exit_code = 6
    status = "residual_failure"


class IrreducibilityFailure(NumericalFailure):
    pass


class NonContiguousSupport(NumericalFailure):
    pass


class DiameterMismatch(NumericalFailure):
    pass


class AmbiguousGrouping(NumericalFailure):
    pass


class TridiagonalViolation(NumericalFailure):
    pass


class BandViolation(TridiagonalViolation):
    pass


class ReducibleTridiagonal(TridiagonalViolation):
    pass


class EigenvalueMismatch(NumericalFailure):
    pass


class ZeroSplitValue(NumericalFailure):
    pass


class RelationResidual(NumericalFailure):
    pass


class CentralityDefect(NumericalFailure):
    pass


class ClosureOverflow(NumericalFailure):
    pass
