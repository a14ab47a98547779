"""Exception types shared across the package."""


class BjorlingError(Exception):
    """Base class for all library errors."""


class NotInvertible(BjorlingError):
    """Attempted inversion of zero or of a zero divisor."""


class BranchError(BjorlingError):
    """Square-root branch value does not square to the constant term."""


class DegenerateSqrt(BjorlingError):
    """Square-root branch value is not invertible in the algebra."""


class DomainError(BjorlingError):
    """Point outside a group chart, or a generator left its analytic domain."""


class NonIntegrable(BjorlingError):
    """Cross-derivative compatibility failed while rebuilding a potential."""


class CausalMismatch(BjorlingError):
    """Curve causal character does not match the requested problem kind."""


class CharacteristicData(BjorlingError):
    """Initial curve is lightlike, so the Cauchy problem degenerates."""


class ConstraintDrift(BjorlingError):
    """Quadratic cone constraint drifted while marching; inconsistent data."""


class UnsupportedRecipe(BjorlingError):
    """No closed integration recipe is known for this group."""


class DegenerateFrame(BjorlingError):
    """Surface normal too close to zero to normalize."""


class ProblemValidationError(BjorlingError):
    """Problem data violates one of its stated invariants."""


class SchemaError(BjorlingError):
    """Malformed problem or solution file."""


class ExpressionError(SchemaError):
    """Unparseable or disallowed jet expression."""
