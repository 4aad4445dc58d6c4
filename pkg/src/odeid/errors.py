"""Exception hierarchy for numerical and usage failures.

Every error carries a short ``kind`` tag; the CLI maps any :class:`IdentError`
to exit code 2 with a JSON object ``{"error": kind, ...payload}`` on stdout.
"""

from __future__ import annotations


class IdentError(Exception):
    """Base class for all structured failures raised by this package."""

    kind = "IdentError"

    def __init__(self, message: str = "", **payload):
        super().__init__(message or self.kind)
        self.payload = payload


class NonFinite(IdentError):
    kind = "NonFinite"


class DimensionMismatch(IdentError):
    kind = "DimensionMismatch"


class RepeatedEigenvalues(IdentError):
    """Two eigenvalues closer than the tolerance; use the repeated-eigenvalue pathway."""

    kind = "RepeatedEigenvalues"


class IndexOutOfRange(IdentError):
    kind = "IndexOutOfRange"


class FullyIdentifiable(IdentError):
    """No zero block coefficient: there is no unidentifiable class to construct."""

    kind = "FullyIdentifiable"


class ZeroInitialCondition(IdentError):
    kind = "ZeroInitialCondition"


class NoRepeatedEigenvalue(IdentError):
    kind = "NoRepeatedEigenvalue"


class DefectiveBlock(IdentError):
    """Repeated eigenvalue whose eigenspace is smaller than its multiplicity."""

    kind = "DefectiveBlock"


class GridMismatch(IdentError):
    kind = "GridMismatch"


class NonUniformGrid(IdentError):
    kind = "NonUniformGrid"


class IllConditionedBasis(IdentError):
    kind = "IllConditionedBasis"


class SingularGram(IdentError):
    """Numerically singular Gram matrix; the practical-unidentifiability signal."""

    kind = "SingularGram"


class ZeroTruth(IdentError):
    kind = "ZeroTruth"


class TooFewTimePoints(IdentError):
    kind = "TooFewTimePoints"


class DegenerateInput(IdentError):
    kind = "DegenerateInput"


class ResampleLimit(IdentError):
    kind = "ResampleLimit"


class Overflow(IdentError):
    kind = "Overflow"
