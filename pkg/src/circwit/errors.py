"""Exception types raised across the package."""


class CircwitError(Exception):
    """Base class for all package errors."""


class DimensionError(CircwitError, ValueError):
    pass


class HermiticityError(CircwitError, ValueError):
    pass


class EmptyInputError(CircwitError, ValueError):
    pass


class ParameterError(CircwitError, ValueError):
    pass


class NoRealBranchError(CircwitError, ValueError):
    """A quadratic constraint has no admissible real root for the given input."""


class DegenerateFamilyError(CircwitError, ValueError):
    """A product-vector construction collapses (zero weight or vanishing denominator)."""
