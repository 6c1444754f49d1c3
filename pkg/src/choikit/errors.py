"""Exception types raised by the public API."""

from __future__ import annotations


class ChoiKitError(ValueError):
    """Base class for validation and precondition failures."""


class NonFiniteEntryError(ChoiKitError):
    """Input contains NaN or infinite entries."""


class NotHermitianError(ChoiKitError):
    """Hermiticity residual exceeds the tolerance."""


class NotUnitVectorError(ChoiKitError):
    """Vector norm differs from 1 beyond the tolerance."""


class NotUnitaryError(ChoiKitError):
    """Matrix fails the unitarity test."""


class NotInFaceError(ChoiKitError):
    """Map does not annihilate the required projector direction."""


class NotCanonicalFormError(ChoiKitError):
    """Matrix entries do not match the canonical face pattern."""


class NotExtremalError(ChoiKitError):
    """Matrix is not a canonical extremal-form Choi matrix."""


class InvalidParamsError(ChoiKitError):
    """Parameter set violates a structural invariant."""


class HypothesisViolatedError(ChoiKitError):
    """Split hypotheses (u, |y|, |z| all nonzero) are not met."""


class EpsilonTooLargeError(ChoiKitError):
    """Requested diagonal shift breaks positivity of the remainder."""
