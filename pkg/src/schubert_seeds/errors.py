"""Exception hierarchy shared by all modules."""


class SeedError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(SeedError, ValueError):
    """Input data does not satisfy an operation's precondition."""

    exit_code = 2


class NotLengthAdditiveError(PreconditionError):
    pass


class NotMaxCosetError(PreconditionError):
    pass


class NotBruhatComparableError(PreconditionError):
    pass


class MoveNotApplicableError(PreconditionError):
    pass


class NotReducedError(PreconditionError):
    """Target labels are not well defined (trip sides overlap or sizes differ)."""


class ConstructionError(SeedError, RuntimeError):
    """A constructed object failed its own postcondition check."""

    exit_code = 3


class DegenerateSampleError(SeedError, ArithmeticError):
    """A sample point makes some required value vanish; draw new samples."""

    exit_code = 3


class VarietyMismatchError(DegenerateSampleError):
    """Sample points do not lie on the variety the seed belongs to."""
