from datetime import datetime, timezone
from typing import Any


# ============================================================================
# Base Exception
# ============================================================================

class CoarseMetricException(Exception):
    """Base exception for the coarse-metrics toolkit"""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}
        self.timestamp = datetime.now(timezone.utc)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """Serialize exception to dictionary"""
        return {
            "type": self.__class__.__name__,
            "message": self.message,
            "details": self.details,
            "timestamp": self.timestamp.isoformat()
        }


# ============================================================================
# Group / Sample Exceptions
# ============================================================================

class GroupAxiomError(CoarseMetricException):
    """Group operations violate associativity or inverse laws on a sample"""
    pass


class EmptySample(CoarseMetricException):
    """A validator or envelope was given no elements or pairs"""
    pass


class EmptyInput(CoarseMetricException):
    """A construction was given an empty point set"""
    pass


class DomainError(CoarseMetricException):
    """Arguments outside the operation's domain"""
    pass


# ============================================================================
# Generating Set Exceptions
# ============================================================================

class GeneratingSetError(CoarseMetricException):
    """Base exception for malformed weighted generating sets"""
    pass


class NonSymmetricGeneratingSet(GeneratingSetError):
    """s is a generator but s^-1 is not, or carries a different weight"""
    pass


class NonPositiveWeight(GeneratingSetError):
    """A generator weight is zero, negative or not finite"""
    pass


class IdentityInGeneratingSet(GeneratingSetError):
    """The identity element was listed as a generator"""
    pass


class NonIntegerWeights(GeneratingSetError):
    """Sphere counts need integer weights"""
    pass


class SchemeMismatch(GeneratingSetError):
    """Generating set does not follow the graded scheme l(x_n) = n"""
    pass


# ============================================================================
# Search / Enumeration Exceptions
# ============================================================================

class BudgetExceeded(CoarseMetricException):
    """An enumeration would materialize more elements than the budget allows"""
    pass


BallEnumerationBudgetExceeded = BudgetExceeded


class NotGenerated(CoarseMetricException):
    """Element is not reachable from the generators within the cost cap"""
    pass


class UncoverableSet(CoarseMetricException):
    """Greedy cover failed to cover a translate"""
    pass


class OutOfRange(CoarseMetricException):
    """Point lies outside every cell of a coarse lattice"""
    pass


# ============================================================================
# Matrix Exceptions
# ============================================================================

class MatrixError(CoarseMetricException):
    """Base exception for GL(n, R) inputs"""
    pass


class SingularMatrix(MatrixError):
    """Matrix is singular or too badly conditioned to invert"""
    pass


class NonFinite(MatrixError):
    """Matrix has NaN or infinite entries"""
    pass


# ============================================================================
# Cocycle Exceptions
# ============================================================================

class InsufficientRange(CoarseMetricException):
    """No sampled pairs reach the distance threshold"""
    pass


class TruncationMismatch(CoarseMetricException):
    """Affine point and cocycle have different layer counts"""
    pass


# ============================================================================
# Configuration Exceptions
# ============================================================================

class ConfigError(CoarseMetricException):
    """Experiment configuration is invalid"""
    pass
