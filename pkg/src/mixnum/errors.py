"""Exception hierarchy.

Validation problems derive from :class:`ValidationError` (CLI exit code 2),
numeric-domain problems from :class:`NumericDomainError` (exit code 3).
"""


class MixnumError(Exception):
    """Base class for all package errors."""


class ValidationError(MixnumError, ValueError):
    pass


class NumericDomainError(MixnumError, ArithmeticError):
    pass


class OrderViolation(ValidationError):
    pass


class RatioNotPowerOfTwo(ValidationError):
    pass


class ScalingFactorTooLarge(ValidationError):
    pass


class NonIntegralSubcarrierCount(ValidationError):
    pass


class SubcarrierCountNotPowerOfTwo(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class CapExceeded(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class SampleRateMismatch(ValidationError):
    pass


class InsufficientSamples(ValidationError):
    pass


class ConfigurationError(ValidationError):
    pass


class DomainError(NumericDomainError):
    pass


class ToleranceNotReached(NumericDomainError):
    pass
