"""Exception hierarchy for lcqft."""


class LcqftError(Exception):
    """Base class for all lcqft errors."""


class OutOfDomain(LcqftError):
    """A point or support box lies outside the configured grid window."""


class OutOfWindow(LcqftError):
    """A requested grid time is too close to the window edge."""


class WindowTooSmall(LcqftError):
    """The grid window cannot hold the causal shadow of a source."""


class EmbeddingError(LcqftError):
    """Base class for embedding construction/validation failures."""


class NotInjective(EmbeddingError):
    """The candidate map identifies distinct source points."""


class CausalConvexityViolated(EmbeddingError):
    """The image of the candidate map is not causally convex."""


class OrientationViolated(EmbeddingError):
    """The linear part is improper or antichronous."""


class GridMismatch(EmbeddingError):
    """Source and target grid spacings differ."""


class MassMismatch(EmbeddingError):
    """Source and target mass parameters differ."""


class UnsupportedMorphism(EmbeddingError):
    """The map family does not cover this source/target combination."""


class DomainMismatch(LcqftError):
    """Composition or application with mismatched domains."""


class AmbientMismatch(LcqftError):
    """Algebra elements from different spacetimes were combined."""


class ValidationMissing(LcqftError):
    """An operation required a validated embedding."""


class NotCausallyConvex(LcqftError):
    """A region failed the causal convexity test."""


class NotCausallySeparated(LcqftError):
    """A causality check was set up on regions that are not spacelike."""


class SupportsNotSeparated(LcqftError):
    """No grid Cauchy surface separates the given supports."""


class StateUnavailable(LcqftError):
    """No quasi-free vacuum is defined for this spacetime."""


class NotStandard(LcqftError):
    """The vector is not cyclic and separating for the matrix algebra."""


class DimensionMismatch(LcqftError):
    """Array dimensions do not match the declared matrix size."""


class ConfigError(LcqftError):
    """A suite configuration failed to parse or validate."""
