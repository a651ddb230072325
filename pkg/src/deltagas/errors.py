"""Exception types shared across the library."""


class DeltaGasError(Exception):
    """Base class for all library-specific errors."""


class SingularArgument(DeltaGasError):
    """A guarded denominator came within the singularity guard of zero."""


class LengthMismatch(DeltaGasError):
    """Two sets that must have equal cardinality do not."""


class SizeLimit(DeltaGasError):
    """Requested size exceeds the desk-scale cap of this operation."""


class DomainError(DeltaGasError):
    """Input coordinates violate the domain assumptions of the operation."""


class QuadratureFailure(DeltaGasError):
    """Adaptive integration failed to converge to the requested accuracy."""


class SamplingExhausted(DeltaGasError):
    """Rejection sampling failed to produce an admissible configuration."""


class UnknownIdentity(DeltaGasError):
    """Identity id not present in the verification registry."""
