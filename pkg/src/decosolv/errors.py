"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConversionError(ValueError):
    """Units of incompatible dimension were asked to convert into each other."""


class FitError(ValueError):
    """Not enough usable data to fit a Gaussian timescale."""


class DegenerateInputError(ValueError):
    """Input carries no fluctuation (e.g. a constant trajectory)."""


class NumericalError(RuntimeError):
    """Quadrature failed to reach the requested tolerance.

    ``achieved`` holds the error estimate reported by the integrator.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
