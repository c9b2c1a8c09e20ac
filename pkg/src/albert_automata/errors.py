"""Exception hierarchy shared by all layers."""


class AutomatonError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(AutomatonError, ValueError):
    """Operand shapes do not agree with each other or with a layout."""


class NotHermitianError(AutomatonError, ValueError):
    pass


class NotUnitaryError(AutomatonError, ValueError):
    pass


class ScopeError(AutomatonError, ValueError):
    """Unknown register name, or overlapping scopes where disjoint ones are required."""


class CapacityError(AutomatonError, ValueError):
    """A register or registry is too small for what is asked of it."""


class RegistryFullError(CapacityError):
    pass


class GodelCodecError(AutomatonError, ValueError):
    """Invalid token, empty proposition or undecodable number."""


class DegenerateInputError(AutomatonError, ValueError):
    """The state carries a single observable branch, so no non-commuting gait is forced."""
