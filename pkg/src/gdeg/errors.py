"""Exception types raised across the package."""


class GdegError(Exception):
    """Base class for every error raised by gdeg."""


class ConfigError(GdegError):
    """Malformed or inconsistent analysis input (CLI exit status 3)."""


class GroupTooLarge(GdegError):
    def __init__(self, order, bound):
        super().__init__(f"group of order {order} exceeds the enumeration bound {bound}")
        self.order = order
        self.bound = bound


class NotAProduct(GdegError):
    pass


class TableMismatch(GdegError):
    pass


class UnsupportedGroup(GdegError):
    pass


class NonIntegerDimension(GdegError):
    pass


class NonIntegerCoefficient(GdegError):
    pass


class EvenN(ConfigError):
    pass


class DelayRangeViolation(ConfigError):
    pass


class DelaySymmetryViolation(ConfigError):
    def __init__(self, j, message):
        super().__init__(message)
        self.j = j


class MuPairingViolation(ConfigError):
    def __init__(self, l, j, message):
        super().__init__(message)
        self.l = l
        self.j = j


class NonCommuting(ConfigError):
    def __init__(self, j, jp, residual):
        super().__init__(f"A_{j} and A_{jp} do not commute (residual {residual:.3e})")
        self.j = j
        self.jp = jp
        self.residual = residual


class ComplexSpectrum(ConfigError):
    pass


class DegenerateLinearization(GdegError):
    """The linearization has a zero eigenvalue (or one within tolerance of zero)."""

    def __init__(self, l, k, margin):
        super().__init__(
            f"linearization is degenerate at (l={l}, k={k}): margin {margin} is not "
            "separated from zero"
        )
        self.l = l
        self.k = k
        self.margin = margin
