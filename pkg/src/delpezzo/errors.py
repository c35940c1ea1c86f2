"""Error taxonomy shared by every module.

The CLI maps ToolkitError subclasses to exit code 1; argument/usage problems
are raised as click.UsageError and exit with code 2.
"""


class ToolkitError(Exception):
    """Base class for all library errors."""


class DomainError(ToolkitError):
    """An input violates a documented precondition."""


class HeightBelowModel(DomainError):
    """Requested section height lies below the rigid section of the model."""


class NonIntegralCoefficient(DomainError):
    """A breaking decomposition would need a fractional fiber coefficient."""


class CapExceeded(ToolkitError):
    """A bounded search or closure passed its element budget."""


class DecompositionNotFound(ToolkitError):
    """The bounded decomposition search exhausted without writing the class
    as a sum over the fixed generating set.

    This firing on a nef integral class of a degree >= 2 lattice is evidence
    that the generating set must be enlarged; the message carries the residual
    class and the generating set size so the event is auditable.  The set is
    never extended silently.
    """


class NotFound(ToolkitError):
    """An exhaustive subgroup search ended without a match."""


class NotApplicable(ToolkitError):
    """A lemma-shaped query whose hypothesis the input does not satisfy."""
