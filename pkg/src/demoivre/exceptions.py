"""Exception hierarchy shared by every module of the package."""


class DeMoivreError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DeMoivreError, ValueError):
    """An argument lies outside the domain of the operation."""


class OutOfRangeError(DomainError):
    """A requested order exceeds what can be computed accurately."""


class UnsupportedProbeError(DeMoivreError, TypeError):
    """The probe kind cannot be used with the requested operation."""


class UnsupportedMethodError(DeMoivreError, ValueError):
    """The evaluation method does not apply to the given probe."""


class InsufficientDataError(DeMoivreError, ValueError):
    """Too few usable points to fit a convergence rate."""


class NonFiniteResultError(DeMoivreError, ArithmeticError):
    """An integrand produced a non-finite value at a quadrature node."""

    def __init__(self, node, value):
        self.node = node
        self.value = value
        super().__init__(f"integrand is not finite at x={node!r} (value {value!r})")
