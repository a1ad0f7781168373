"""Exception types raised across the package."""


class OrderRangeError(ValueError):
    """A polynomial or mode order exceeds the supported cap."""


class DomainError(ValueError):
    """An argument lies outside the function's domain (e.g. nonpositive waist)."""


class UnsupportedOrderError(ValueError):
    """Only first-order (|l| = 1) LG/HG conversion is supported."""


class InvalidStageError(ValueError):
    """A pump-preparation element received a state it cannot act on."""


class DegenerateStateError(ValueError):
    """A projection or normalization has zero norm."""


class NonConvergenceError(RuntimeError):
    """Quadrature doubling test failed; carries both estimates."""

    def __init__(self, coarse, fine, tolerance):
        self.coarse = coarse
        self.fine = fine
        self.tolerance = tolerance
        super().__init__(
            f"quadrature did not converge: |{fine} - {coarse}| = "
            f"{abs(fine - coarse):.3e} > {tolerance:.1e}"
        )
