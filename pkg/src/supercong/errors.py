"""Exception types raised by the arithmetic and catalog layers."""


class SuperCongError(Exception):
    """Base class for every error raised by this package."""


class DenominatorDivisibleByP(SuperCongError, ValueError):
    """A rational that should be p-integral has p in its denominator."""

    def __init__(self, value, p, context=None):
        self.value = value
        self.p = p
        self.context = context
        msg = f"{p} divides the denominator of {value}"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class NonUnitDivisor(SuperCongError, ZeroDivisionError):
    pass


class ModulusMismatch(SuperCongError, ValueError):
    pass


class BaseDivisibleByP(SuperCongError, ValueError):
    pass


class TermDivisibleByP(SuperCongError, ValueError):
    pass


class NotPrime(SuperCongError, ValueError):
    pass


class NotApplicable(SuperCongError):
    """The check's hypotheses are not met at the requested (p, a)."""
