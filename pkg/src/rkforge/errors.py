"""Exception hierarchy."""


class RkforgeError(Exception):
    """Base class for all library errors."""


class FamilyError(RkforgeError, ValueError):
    """The family parameters do not yield a pair."""


class DegenerateFamilyError(FamilyError):
    """Coinciding nodes or zero denominators in the family formulas."""


class SingularFamilyError(FamilyError):
    """The 9x9 interpolant matrix is singular."""


class ConsistencyError(RkforgeError):
    """An internal self-check of a construction failed."""


class NoErrorEstimatorError(RkforgeError):
    """No difference vector gives an order-4 embedded method."""


class IntegrationError(RkforgeError):
    """The right-hand side produced a non-finite value."""


class TableauFormatError(RkforgeError, ValueError):
    """Malformed tableau file."""
