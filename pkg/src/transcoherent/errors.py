"""Exception types raised by the library."""


class CutoffTooSmallError(ValueError):
    """Photon-number cutoff cannot hold the requested state."""

    def __init__(self, message, required):
        super().__init__(f"{message} (minimum n_cut = {required})")
        self.required = required


class DegenerateSpecError(ValueError):
    """Recursion would divide by zero or truncate early at an interior manifold."""


class ConditioningError(ValueError):
    """Post-selection on an outcome with (numerically) zero probability."""


class FitError(ValueError):
    """Not enough data for a fit."""
